//! Quaternary belief propagation with scalar messages (BP₄ / MBP₄) and the
//! hard-decision reliability vector.

mod config;
mod decoder;
mod dist;
mod reliability;

use thiserror::Error;

pub use config::{AlphaMode, BpConfig, Schedule};
pub use decoder::{
    bp4_iteration, decode, init_decoder, BeliefState, Bp4Decoder, DecodeOutcome, DecodeStatus,
};
pub use dist::{hard_decision, soft_reliability, QuaternaryDist};
pub use reliability::update_reliability_vec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BpError {
    #[error("prior epsilon {0} outside (0, 1)")]
    InvalidEpsilon(f64),
    #[error("max_iterations must be at least 1")]
    ZeroIterations,
    #[error("memory exponent alpha = {0} must be positive")]
    NonPositiveAlpha(f64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("syndrome has {found} bits, code has {expected} checks")]
    SyndromeLength { expected: usize, found: usize },
}
