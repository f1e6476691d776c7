use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bp4::{AlphaMode, BpConfig, Bp4Decoder, Schedule};
use crate::codes::StabilizerCode;
use crate::osd4::{osd_w, ReliabilityMode};
use crate::pauli_algebra::{syndrome_of, CheckMatrix, PauliVector, Syndrome};
use crate::scalar::Real;

use super::channel::ChannelModel;
use super::SimError;

/// What runs after BP gives up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PostProcess {
    #[default]
    None,
    Osd { order: usize, mode: ReliabilityMode },
}

/// Decoder settings independent of any particular code or channel rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    /// `None` uses the code's default cap.
    pub max_iterations: Option<usize>,
    pub schedule: Schedule,
    pub alpha_mode: AlphaMode,
    /// `None` initializes BP with the channel rate.
    pub prior_epsilon: Option<f64>,
    pub post: PostProcess,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: None,
            schedule: Schedule::Serial,
            alpha_mode: AlphaMode::Plain,
            prior_epsilon: None,
            post: PostProcess::Osd {
                order: 2,
                mode: ReliabilityMode::Osd4,
            },
        }
    }
}

/// Channel rates of exactly 0 or 1 cannot seed a log-domain prior.
const PRIOR_FLOOR: f64 = 1e-6;

impl DecoderConfig {
    pub fn bp_only() -> Self {
        Self {
            post: PostProcess::None,
            ..Self::default()
        }
    }

    pub fn with_osd(mut self, order: usize, mode: ReliabilityMode) -> Self {
        self.post = PostProcess::Osd { order, mode };
        self
    }

    pub fn bp_config(&self, code: &StabilizerCode, channel_epsilon: f64) -> BpConfig {
        let prior = self
            .prior_epsilon
            .unwrap_or_else(|| channel_epsilon.clamp(PRIOR_FLOOR, 1.0 - PRIOR_FLOOR));
        BpConfig {
            max_iterations: self.max_iterations.unwrap_or_else(|| code.default_max_iterations()),
            schedule: self.schedule,
            alpha_mode: self.alpha_mode,
            prior_epsilon: prior,
        }
    }
}

/// Output of one decode through BP and (if needed) OSD.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub estimate: PauliVector,
    pub bp_converged: bool,
    pub osd_invoked: bool,
    pub iterations_used: usize,
}

/// BP₄ followed by optional OSD₄-w, bound to one code.
#[derive(Clone, Debug)]
pub struct Pipeline<T> {
    check: CheckMatrix,
    bp: Bp4Decoder<T>,
    post: PostProcess,
}

impl<T: Real> Pipeline<T> {
    pub fn new(code: &StabilizerCode, config: &DecoderConfig, channel_epsilon: f64) -> Result<Self, SimError> {
        let bp = Bp4Decoder::for_code(code, config.bp_config(code, channel_epsilon))?;
        Ok(Self {
            check: code.check.clone(),
            bp,
            post: config.post,
        })
    }

    pub fn bp(&self) -> &Bp4Decoder<T> {
        &self.bp
    }

    pub fn decode(&self, syndrome: &Syndrome) -> Result<PipelineOutput, SimError> {
        let out = self.bp.decode(syndrome)?;
        let bp_converged = out.converged();
        if bp_converged {
            return Ok(PipelineOutput {
                estimate: out.estimate,
                bp_converged,
                osd_invoked: false,
                iterations_used: out.iterations_used,
            });
        }
        match self.post {
            PostProcess::None => Ok(PipelineOutput {
                estimate: out.estimate,
                bp_converged,
                osd_invoked: false,
                iterations_used: out.iterations_used,
            }),
            PostProcess::Osd { order, mode } => {
                let sol = osd_w(&self.check, syndrome, &out.estimate, &out.beliefs, &out.ell, order, mode)?;
                Ok(PipelineOutput {
                    estimate: sol.estimate,
                    bp_converged,
                    osd_invoked: true,
                    iterations_used: out.iterations_used,
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub bp_converged: bool,
    pub osd_invoked: bool,
    pub logical_failure: bool,
    /// The final estimate did not reproduce the syndrome.
    pub invalid_output: bool,
    pub iterations_used: usize,
    pub estimate_weight: usize,
}

/// `true` iff decoding `error` as `estimate` failed: either the estimate
/// does not reproduce the syndrome, or the residual is a nontrivial logical.
pub fn is_logical_failure(code: &StabilizerCode, syndrome: &Syndrome, error: &PauliVector, estimate: &PauliVector) -> bool {
    let valid = syndrome_of(&code.check, estimate).map(|s| &s == syndrome).unwrap_or(false);
    !valid || code.is_logical_error(&estimate.mul(error))
}

/// Sample, decode, classify.
pub fn run_trial<T: Real, R: Rng + ?Sized>(
    code: &StabilizerCode,
    pipeline: &Pipeline<T>,
    channel: &ChannelModel,
    rng: &mut R,
) -> Result<TrialResult, SimError> {
    let error = channel.sample(code.n, rng);
    let syndrome = syndrome_of(&code.check, &error)?;
    let out = pipeline.decode(&syndrome)?;
    let valid = syndrome_of(&code.check, &out.estimate)? == syndrome;
    let logical_failure = !valid || code.is_logical_error(&out.estimate.mul(&error));
    Ok(TrialResult {
        bp_converged: out.bp_converged,
        osd_invoked: out.osd_invoked,
        logical_failure,
        invalid_output: !valid,
        iterations_used: out.iterations_used,
        estimate_weight: out.estimate.weight(),
    })
}
