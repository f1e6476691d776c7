use crate::pauli_algebra::{BitMatrix, BitVec};

use super::OsdError;

/// Reduced system `[I A]` after Gaussian elimination of the permuted
/// parity matrix.
///
/// `A` is kept column-wise: flipping reliable bit `j` toggles `a_column(j)`
/// in the unreliable part.
#[derive(Clone, Debug)]
pub struct GaussResult {
    rank: usize,
    cols: usize,
    a_cols: Vec<BitVec>,
    z_prime: BitVec,
    mu: Vec<usize>,
}

impl GaussResult {
    /// Number of pivots (`n − k` for a valid check matrix).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Width of the reliable part (`n + k`).
    pub fn num_reliable(&self) -> usize {
        self.cols - self.rank
    }

    pub fn a_column(&self, j: usize) -> &BitVec {
        &self.a_cols[j]
    }

    /// Row `i` of `A`.
    pub fn a_row(&self, i: usize) -> BitVec {
        BitVec::from_bools(self.a_cols.iter().map(|c| c.get(i)))
    }

    pub fn z_prime(&self) -> &BitVec {
        &self.z_prime
    }

    /// `μ[c]` is the pre-elimination column moved to position `c`: pivots
    /// first in order, then the remaining columns in order.
    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    /// `z′ ⊕ A·rᵀ`.
    pub fn unreliable_part(&self, reliable: &BitVec) -> BitVec {
        debug_assert_eq!(reliable.len(), self.num_reliable());
        let mut u = self.z_prime.clone();
        for j in reliable.iter_ones() {
            u.xor_assign(&self.a_cols[j]);
        }
        u
    }

    /// Unreliable part after flipping `flips` in the reliable part, starting
    /// from the unreliable part `base` of the unflipped vector. `O(|flips|·n)`.
    pub fn flip_update(&self, base: &BitVec, flips: &[usize]) -> BitVec {
        let mut u = base.clone();
        for &j in flips {
            u.xor_assign(&self.a_cols[j]);
        }
        u
    }
}

/// Reduces `matrix` to `[I A; 0 0]` (after the column permutation `μ`),
/// applying the same row operations to `syndrome`.
///
/// Fails if the syndrome is inconsistent with the matrix or, when
/// `expected_rank` is given, if the rank differs.
pub fn gaussian_eliminate(
    matrix: &BitMatrix,
    syndrome: &BitVec,
    expected_rank: Option<usize>,
) -> Result<GaussResult, OsdError> {
    let m = matrix.num_rows();
    let cols = matrix.num_cols();
    if syndrome.len() != m {
        return Err(OsdError::DimensionMismatch {
            expected: m,
            found: syndrome.len(),
        });
    }
    let mut rows: Vec<BitVec> = matrix.rows().to_vec();
    let mut z: Vec<bool> = syndrome.iter().collect();
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            free.push(c);
            continue;
        }
        let Some(p) = (r..m).find(|&i| rows[i].get(c)) else {
            free.push(c);
            continue;
        };
        rows.swap(r, p);
        z.swap(r, p);
        let pivot = rows[r].clone();
        let zp = z[r];
        for i in 0..m {
            if i != r && rows[i].get(c) {
                rows[i].xor_assign(&pivot);
                z[i] ^= zp;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if let Some(expected) = expected_rank {
        if r != expected {
            return Err(OsdError::RankMismatch { expected, found: r });
        }
    }
    if z[r..].iter().any(|&b| b) {
        return Err(OsdError::InconsistentSyndrome);
    }
    let a_cols = free
        .iter()
        .map(|&c| BitVec::from_bools(rows[..r].iter().map(|row| row.get(c))))
        .collect();
    let mut mu = pivots;
    mu.extend(free);
    Ok(GaussResult {
        rank: r,
        cols,
        a_cols,
        z_prime: BitVec::from_bools(z[..r].iter().copied()),
        mu,
    })
}

/// Step 4: `[z′ ⊕ A·rᵀ, r]` in the permuted coordinates.
pub fn osd_solve_base(gauss: &GaussResult, reliable: &BitVec) -> BitVec {
    let u = gauss.unreliable_part(reliable);
    BitVec::from_bools(u.iter().chain(reliable.iter()))
}
