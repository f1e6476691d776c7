//! Depolarizing-channel Monte Carlo: sampling, decoding, logical-failure
//! classification, stopping rules, sweeps, and threshold crossings.

mod channel;
pub mod output;
mod point;
pub mod rng;
mod threshold;
mod trial;

use thiserror::Error;

pub use channel::{sample_depolarizing, ChannelModel};
pub use point::{run_point, sweep, RunStats, StopRule, Tally};
pub use threshold::{
    curves_from_table, estimate_threshold, estimate_threshold_from_curves, Curve, CurvePoint, PairBracket,
    PairCrossing, ThresholdError, ThresholdEstimate,
};
pub use trial::{is_logical_failure, run_trial, DecoderConfig, Pipeline, PipelineOutput, PostProcess, TrialResult};

use crate::bp4::BpError;
use crate::osd4::OsdError;
use crate::pauli_algebra::PauliError;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Bp(#[from] BpError),
    #[error(transparent)]
    Osd(#[from] OsdError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("channel epsilon {0} outside [0, 1]")]
    InvalidEpsilon(f64),
    #[error("min_logical_errors must be at least 1")]
    InvalidStop,
    #[error("sweep needs at least one code and one epsilon")]
    EmptySweep,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
