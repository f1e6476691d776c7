use serde::{Deserialize, Serialize};

use super::BpError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    /// Qubits in ascending index; each qubit pulls fresh check messages,
    /// then pushes its own.
    #[default]
    Serial,
    /// Flooding: all check messages, then all qubit messages.
    Parallel,
}

/// How the memory exponent `α` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaMode {
    /// Plain BP₄, `α = 1`.
    #[default]
    Plain,
    Fixed { alpha: f64 },
    /// `α = slope · log10(ε) + intercept`, with `ε` the prior rate.
    EpsilonScaled { slope: f64, intercept: f64 },
}

impl AlphaMode {
    pub const MBP_DEFAULT_ALPHA: f64 = 1.6;

    /// Coefficients `(−0.16, −0.48)`.
    pub fn epsilon_scaled_default() -> Self {
        AlphaMode::EpsilonScaled {
            slope: -0.16,
            intercept: -0.48,
        }
    }

    pub fn resolve(&self, epsilon: f64) -> f64 {
        match *self {
            AlphaMode::Plain => 1.0,
            AlphaMode::Fixed { alpha } => alpha,
            AlphaMode::EpsilonScaled { slope, intercept } => slope * epsilon.log10() + intercept,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BpConfig {
    pub max_iterations: usize,
    pub schedule: Schedule,
    pub alpha_mode: AlphaMode,
    pub prior_epsilon: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            max_iterations: 60,
            schedule: Schedule::Serial,
            alpha_mode: AlphaMode::Plain,
            prior_epsilon: 0.01,
        }
    }
}

impl BpConfig {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.prior_epsilon = epsilon;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_mode.resolve(self.prior_epsilon)
    }

    pub fn validate(&self) -> Result<(), BpError> {
        if !(self.prior_epsilon > 0.0 && self.prior_epsilon < 1.0) {
            return Err(BpError::InvalidEpsilon(self.prior_epsilon));
        }
        if self.max_iterations == 0 {
            return Err(BpError::ZeroIterations);
        }
        let alpha = self.alpha();
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(BpError::NonPositiveAlpha(alpha));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(BpConfig::default().validate().is_ok());
        assert_eq!(
            BpConfig::default().with_epsilon(0.0).validate(),
            Err(BpError::InvalidEpsilon(0.0))
        );
        assert!(BpConfig::default().with_epsilon(1.0).validate().is_err());
        let cfg = BpConfig {
            max_iterations: 0,
            ..Default::default()
        };
        assert_eq!(cfg.validate(), Err(BpError::ZeroIterations));
    }

    #[test]
    fn alpha_modes() {
        assert_eq!(AlphaMode::Plain.resolve(0.1), 1.0);
        assert_eq!(AlphaMode::Fixed { alpha: 1.6 }.resolve(0.1), 1.6);
        let a = AlphaMode::epsilon_scaled_default().resolve(1e-5);
        assert!((a - (0.8 - 0.48)).abs() < 1e-12);
        // the fitted line goes non-positive above ε = 10^-3
        let cfg = BpConfig {
            alpha_mode: AlphaMode::epsilon_scaled_default(),
            ..Default::default()
        }
        .with_epsilon(0.05);
        assert!(matches!(cfg.validate(), Err(BpError::NonPositiveAlpha(_))));
    }
}
