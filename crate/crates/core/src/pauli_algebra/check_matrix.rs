use std::fmt;

use super::gf2::{gf2_rank, BitMatrix, BitVec, EchelonBasis};
use super::pauli::PauliVector;
use super::PauliError;

/// Measurement outcomes of the `m` stabilizer generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Syndrome(pub BitVec);

impl Syndrome {
    pub fn zeros(m: usize) -> Self {
        Syndrome(BitVec::zeros(m))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0.get(i)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn parse(s: &str) -> Result<Self, PauliError> {
        BitVec::parse_bit_string(s.trim())
            .map(Syndrome)
            .ok_or_else(|| PauliError::BadBitString(s.to_string()))
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_bit_string())
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({self})")
    }
}

/// The `m × 2n` check matrix, one Pauli row per stabilizer generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckMatrix {
    n: usize,
    rows: Vec<PauliVector>,
}

impl CheckMatrix {
    pub fn new(n: usize, rows: Vec<PauliVector>) -> Result<Self, PauliError> {
        if let Some(bad) = rows.iter().find(|r| r.n() != n) {
            return Err(PauliError::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Self { n, rows })
    }

    /// From `2n`-column binary rows.
    pub fn from_symplectic_rows(n: usize, rows: &[BitVec]) -> Result<Self, PauliError> {
        let rows = rows
            .iter()
            .map(|r| {
                if r.len() != 2 * n {
                    Err(PauliError::DimensionMismatch {
                        expected: 2 * n,
                        found: r.len(),
                    })
                } else {
                    PauliVector::from_symplectic(r)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n, rows })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &PauliVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[PauliVector] {
        &self.rows
    }

    /// `S̃` as an `m × 2n` matrix.
    pub fn to_bit_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            2 * self.n,
            self.rows.iter().map(PauliVector::to_symplectic).collect(),
        )
    }

    /// `S̃Λ`: each row with its halves swapped, so `z = H ẽᵀ` in plain GF(2).
    pub fn parity_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            2 * self.n,
            self.rows
                .iter()
                .map(|r| BitVec::from_bools(r.z_bits().iter().chain(r.x_bits().iter())))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.to_bit_matrix())
    }

    /// Pairs `(i, j)`, `i < j`, of anticommuting rows.
    pub fn commutation_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if self.rows[i].anticommutes(&self.rows[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Tanner-graph adjacency: for each qubit, the `(check, letter)` pairs touching it.
    pub fn qubit_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (c, row) in self.rows.iter().enumerate() {
            for (q, a) in adj.iter_mut().enumerate() {
                if row.x_bits().get(q) || row.z_bits().get(q) {
                    a.push(c);
                }
            }
        }
        adj
    }

    pub fn rowspace_basis(&self) -> EchelonBasis {
        let sym: Vec<BitVec> = self.rows.iter().map(PauliVector::to_symplectic).collect();
        EchelonBasis::from_rows(sym.iter())
    }
}

/// `z = Ẽ (S̃Λ)ᵀ`: bit `i` is set iff `e` anticommutes with row `i`.
pub fn syndrome_of(check: &CheckMatrix, e: &PauliVector) -> Result<Syndrome, PauliError> {
    if e.n() != check.n() {
        return Err(PauliError::DimensionMismatch {
            expected: check.n(),
            found: e.n(),
        });
    }
    Ok(Syndrome(BitVec::from_bools(
        check.rows().iter().map(|r| r.anticommutes(e)),
    )))
}

/// Rank-append test: `rank(S̃ ∪ {v}) == rank(S̃)`.
pub fn in_rowspace(check: &CheckMatrix, v: &PauliVector) -> Result<bool, PauliError> {
    if v.n() != check.n() {
        return Err(PauliError::DimensionMismatch {
            expected: check.n(),
            found: v.n(),
        });
    }
    let mut m = check.to_bit_matrix();
    let base = gf2_rank(&m);
    m.push_row(v.to_symplectic());
    Ok(gf2_rank(&m) == base)
}
