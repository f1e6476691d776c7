//! Pairwise crossing estimates from logical-error-rate curves.
//!
//! Each curve is interpolated piecewise-linearly in `(ln ε, ln ler)`, so a
//! power law `ler ∝ ε^d` is reproduced exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::point::RunStats;

/// One sampled point of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub epsilon: f64,
    pub ler: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub distance: usize,
    pub points: Vec<CurvePoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairCrossing {
    pub d_small: usize,
    pub d_large: usize,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub crossings: Vec<PairCrossing>,
    pub mean: f64,
    /// `max − min` over the pairwise crossings.
    pub spread: f64,
}

impl fmt::Display for ThresholdEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "crossing={:.5} spread={:.5}", self.mean, self.spread)?;
        for c in &self.crossings {
            write!(f, " d{}/d{}={:.5}", c.d_small, c.d_large, c.epsilon)?;
        }
        Ok(())
    }
}

/// `ln ler_large − ln ler_small` at each shared ε, for a pair without a
/// crossing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairBracket {
    pub d_small: usize,
    pub d_large: usize,
    pub epsilons: Vec<f64>,
    pub log_ratio: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ThresholdError {
    /// Fewer than two distances or three shared ε values.
    InsufficientData { distances: usize, epsilons: usize },
    /// At least one adjacent pair never crosses in the sampled range.
    NoCrossing {
        found: Vec<PairCrossing>,
        missing: Vec<PairBracket>,
    },
}

impl fmt::Display for ThresholdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdError::InsufficientData { distances, epsilons } => write!(
                f,
                "need >= 2 distances and >= 3 shared epsilons, got {distances} and {epsilons}"
            ),
            ThresholdError::NoCrossing { missing, .. } => {
                write!(f, "no-crossing")?;
                for m in missing {
                    let side = if m.log_ratio.iter().all(|&r| r < 0.0) {
                        "below"
                    } else if m.log_ratio.iter().all(|&r| r >= 0.0) {
                        "above"
                    } else {
                        "mixed"
                    };
                    write!(f, " d{}/d{}:{}", m.d_small, m.d_large, side)?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ThresholdError {}

/// Groups a sweep table into curves keyed by design distance. Zero rates
/// are floored at half an event, `0.5 / trials`.
pub fn curves_from_table(table: &[RunStats]) -> Vec<Curve> {
    let mut by_d: BTreeMap<usize, Vec<CurvePoint>> = BTreeMap::new();
    for s in table {
        let Some(d) = s.d else { continue };
        let ler = if s.logical_errors == 0 {
            0.5 / s.trials.max(1) as f64
        } else {
            s.ler
        };
        by_d.entry(d).or_default().push(CurvePoint { epsilon: s.epsilon, ler });
    }
    by_d.into_iter()
        .map(|(distance, mut points)| {
            points.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
            Curve { distance, points }
        })
        .collect()
}

pub fn estimate_threshold(table: &[RunStats]) -> Result<ThresholdEstimate, ThresholdError> {
    estimate_threshold_from_curves(&curves_from_table(table))
}

pub fn estimate_threshold_from_curves(curves: &[Curve]) -> Result<ThresholdEstimate, ThresholdError> {
    let mut curves = curves.to_vec();
    curves.sort_by_key(|c| c.distance);
    let shared = |a: &Curve, b: &Curve| -> Vec<(f64, f64, f64)> {
        a.points
            .iter()
            .filter_map(|p| {
                b.points
                    .iter()
                    .find(|q| q.epsilon == p.epsilon)
                    .map(|q| (p.epsilon, p.ler, q.ler))
            })
            .collect()
    };
    let min_shared = curves
        .windows(2)
        .map(|w| shared(&w[0], &w[1]).len())
        .min()
        .unwrap_or(0);
    if curves.len() < 2 || min_shared < 3 {
        return Err(ThresholdError::InsufficientData {
            distances: curves.len(),
            epsilons: min_shared,
        });
    }

    let mut found = Vec::new();
    let mut missing = Vec::new();
    for w in curves.windows(2) {
        let (small, large) = (&w[0], &w[1]);
        let pts = shared(small, large);
        let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
        let diff: Vec<f64> = pts.iter().map(|p| p.2.ln() - p.1.ln()).collect();
        let crossing = (0..pts.len() - 1).find_map(|i| {
            let (f0, f1) = (diff[i], diff[i + 1]);
            if f0 < 0.0 && f1 >= 0.0 {
                let t = -f0 / (f1 - f0);
                Some((xs[i] + t * (xs[i + 1] - xs[i])).exp())
            } else {
                None
            }
        });
        match crossing {
            Some(epsilon) => found.push(PairCrossing {
                d_small: small.distance,
                d_large: large.distance,
                epsilon,
            }),
            None => missing.push(PairBracket {
                d_small: small.distance,
                d_large: large.distance,
                epsilons: pts.iter().map(|p| p.0).collect(),
                log_ratio: diff,
            }),
        }
    }
    if !missing.is_empty() {
        return Err(ThresholdError::NoCrossing { found, missing });
    }
    let values: Vec<f64> = found.iter().map(|c| c.epsilon).collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values.iter().cloned().fold(f64::MIN, f64::max) - values.iter().cloned().fold(f64::MAX, f64::min);
    Ok(ThresholdEstimate {
        crossings: found,
        mean,
        spread,
    })
}
