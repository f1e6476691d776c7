//! Binary symplectic Pauli algebra and GF(2) primitives.

mod check_matrix;
pub mod format;
pub mod gf2;
mod pauli;

use thiserror::Error;

pub use check_matrix::{in_rowspace, syndrome_of, CheckMatrix, Syndrome};
pub use gf2::{gf2_rank, BitMatrix, BitVec, EchelonBasis};
pub use pauli::{pauli_weight, tau_map, tau_unmap, Pauli, PauliVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("symplectic vector has odd length {0}")]
    OddLength(usize),
    #[error("invalid Pauli letter {0:?}")]
    BadLetter(char),
    #[error("malformed bit string {0:?}")]
    BadBitString(String),
}
