//! Ordered-statistics post-processing over the binary system `z = H ẽᵀ`,
//! with columns sorted by quaternary reliability.

mod gauss;
mod order;
mod search;

use thiserror::Error;

pub use gauss::{gaussian_eliminate, osd_solve_base, GaussResult};
pub use order::{reliability_keys, sort_reliability, sort_reliability_from_phi, ReliabilityKey, ReliabilityMode};
pub use search::{candidate_count, osd_w, reprocessing_order, OsdSolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OsdError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("check matrix rank {found} differs from expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("syndrome is not in the column space of the check matrix")]
    InconsistentSyndrome,
}
