use crate::bp4::QuaternaryDist;
use crate::pauli_algebra::{syndrome_of, BitVec, CheckMatrix, PauliVector, Syndrome};
use crate::scalar::Real;

use super::gauss::{gaussian_eliminate, GaussResult};
use super::order::{sort_reliability, ReliabilityMode};
use super::OsdError;

/// Output of OSD: a valid error of minimum Pauli weight among the candidates.
#[derive(Clone, Debug)]
pub struct OsdSolution {
    pub estimate: PauliVector,
    pub weight: usize,
    pub candidates_tried: u64,
}

/// Pauli operators packed back to back as `[x words | z words]`.
struct PackedPaulis {
    n: usize,
    half: usize,
    data: Vec<u64>,
}

impl PackedPaulis {
    fn new(n: usize) -> Self {
        Self {
            n,
            half: n.div_ceil(64),
            data: Vec::new(),
        }
    }

    fn stride(&self) -> usize {
        2 * self.half
    }

    fn push(&mut self, p: &PauliVector) {
        self.data.extend_from_slice(p.x_bits().words());
        self.data.extend_from_slice(p.z_bits().words());
    }

    fn len(&self) -> usize {
        self.data.len() / self.stride().max(1)
    }

    fn get(&self, i: usize) -> &[u64] {
        let s = self.stride();
        &self.data[i * s..(i + 1) * s]
    }

    fn weight(&self, words: &[u64]) -> usize {
        let (x, z) = words.split_at(self.half);
        x.iter().zip(z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    fn to_pauli(&self, words: &[u64]) -> PauliVector {
        let (x, z) = words.split_at(self.half);
        PauliVector::from_halves(BitVec::from_words(self.n, x.to_vec()), BitVec::from_words(self.n, z.to_vec()))
            .expect("equal halves")
    }
}

/// Permuted system shared by every candidate of one OSD run.
struct Reprocessing {
    gauss: GaussResult,
    /// original coordinate of permuted column `c`, i.e. `π[μ[c]]`
    order: Vec<usize>,
    base: PauliVector,
    /// effect of flipping reliable bit `j`, in original coordinates
    deltas: PackedPaulis,
}

impl Reprocessing {
    fn new(check: &CheckMatrix, syndrome: &Syndrome, initial: &PauliVector, pi: &[usize]) -> Result<Self, OsdError> {
        let n = check.n();
        let h = check.parity_matrix();
        let permuted = crate::pauli_algebra::BitMatrix::from_rows(
            2 * n,
            h.rows().iter().map(|r| r.gather(pi)).collect(),
        );
        let gauss = gaussian_eliminate(&permuted, syndrome.bits(), None)?;
        let order: Vec<usize> = gauss.mu().iter().map(|&c| pi[c]).collect();
        let rank = gauss.rank();
        let permuted_init = initial.to_symplectic().gather(&order);
        let reliable = permuted_init.slice(rank, 2 * n - rank);
        let unreliable = gauss.unreliable_part(&reliable);
        let base_bits = BitVec::from_bools(unreliable.iter().chain(reliable.iter())).scatter(&order, 2 * n);
        let base = PauliVector::from_symplectic(&base_bits).expect("2n bits");
        let mut deltas = PackedPaulis::new(n);
        for j in 0..gauss.num_reliable() {
            let mut d = BitVec::zeros(2 * n);
            for i in gauss.a_column(j).iter_ones() {
                d.set(order[i], true);
            }
            d.set(order[rank + j], true);
            deltas.push(&PauliVector::from_symplectic(&d).expect("2n bits"));
        }
        Ok(Self { gauss, order, base, deltas })
    }
}

/// Order-`w` OSD with the given reliability order.
///
/// Candidates are enumerated by ascending flip weight, then lexicographic
/// flip positions; the first candidate of strictly smaller Pauli weight wins.
pub fn osd_w<T: Real>(
    check: &CheckMatrix,
    syndrome: &Syndrome,
    initial_estimate: &PauliVector,
    beliefs: &[QuaternaryDist<T>],
    ell: &[usize],
    w: usize,
    mode: ReliabilityMode,
) -> Result<OsdSolution, OsdError> {
    let n = check.n();
    if initial_estimate.n() != n || beliefs.len() != n || ell.len() != n {
        return Err(OsdError::DimensionMismatch {
            expected: n,
            found: if initial_estimate.n() != n {
                initial_estimate.n()
            } else if beliefs.len() != n {
                beliefs.len()
            } else {
                ell.len()
            },
        });
    }
    if syndrome.len() != check.m() {
        return Err(OsdError::DimensionMismatch {
            expected: check.m(),
            found: syndrome.len(),
        });
    }
    let pi = sort_reliability(ell, beliefs, mode);
    let rp = Reprocessing::new(check, syndrome, initial_estimate, &pi)?;

    let mut best = rp.base.clone();
    let mut best_weight = best.weight();
    let mut tried = 1u64;
    let k = rp.deltas.len();
    let depth = w.min(k);
    if depth > 0 {
        let stride = rp.deltas.stride();
        let mut base_words = rp.base.x_bits().words().to_vec();
        base_words.extend_from_slice(rp.base.z_bits().words());
        // bufs[l] holds the base times the first l chosen deltas
        let mut bufs = vec![0u64; (depth + 1) * stride];
        bufs[..stride].copy_from_slice(&base_words);
        let mut best_words: Option<Vec<u64>> = None;
        for t in 1..=depth {
            search_level(&rp.deltas, 0, 0, t, &mut bufs, &mut |cand| {
                tried += 1;
                let wt = rp.deltas.weight(cand);
                if wt < best_weight {
                    best_weight = wt;
                    best_words = Some(cand.to_vec());
                }
            });
        }
        if let Some(words) = best_words {
            best = rp.deltas.to_pauli(&words);
        }
    }
    debug_assert_eq!(syndrome_of(check, &best).ok().as_ref(), Some(syndrome));
    Ok(OsdSolution {
        estimate: best,
        weight: best_weight,
        candidates_tried: tried,
    })
}

/// Depth-first enumeration of `remaining`-subsets of `deltas[start..]` in
/// lexicographic order; level `l` of `bufs` carries the running product.
fn search_level(
    deltas: &PackedPaulis,
    start: usize,
    level: usize,
    remaining: usize,
    bufs: &mut [u64],
    visit: &mut dyn FnMut(&[u64]),
) {
    let stride = deltas.stride();
    let next = (level + 1) * stride;
    for j in start..=deltas.len() - remaining {
        {
            let (lower, upper) = bufs.split_at_mut(next);
            let current = &lower[level * stride..];
            for ((o, a), b) in upper[..stride].iter_mut().zip(current).zip(deltas.get(j)) {
                *o = a ^ b;
            }
        }
        if remaining == 1 {
            visit(&bufs[next..next + stride]);
        } else {
            search_level(deltas, j + 1, level + 1, remaining - 1, bufs, visit);
        }
    }
}

/// `Σ_{i ≤ w} C(n + k, i)` for `n + k = reliable`.
pub fn candidate_count(reliable: usize, w: usize) -> u64 {
    let mut total = 0u64;
    let mut binom = 1u64;
    for i in 0..=w.min(reliable) {
        total += binom;
        binom = binom * (reliable - i) as u64 / (i as u64 + 1);
    }
    total
}

/// Full `π`/`μ` bookkeeping for one syndrome, exposed for inspection.
pub fn reprocessing_order<T: Real>(
    check: &CheckMatrix,
    syndrome: &Syndrome,
    initial_estimate: &PauliVector,
    beliefs: &[QuaternaryDist<T>],
    ell: &[usize],
    mode: ReliabilityMode,
) -> Result<(Vec<usize>, GaussResult), OsdError> {
    let pi = sort_reliability(ell, beliefs, mode);
    let rp = Reprocessing::new(check, syndrome, initial_estimate, &pi)?;
    Ok((rp.order, rp.gauss))
}
