use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::StabilizerCode;
use crate::scalar::Real;

use super::channel::ChannelModel;
use super::rng::{point_seed, trial_rng};
use super::trial::{run_trial, DecoderConfig, Pipeline, TrialResult};
use super::SimError;

/// Stop once `min_logical_errors` failures are seen or after `max_trials`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopRule {
    pub min_logical_errors: u64,
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_logical_errors: 100,
            max_trials: 1_000_000,
        }
    }
}

/// Commutative aggregate of trial outcomes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub trials: u64,
    pub logical_errors: u64,
    pub bp_converged: u64,
    pub osd_invoked: u64,
    pub invalid_outputs: u64,
    pub iterations: u64,
}

impl Tally {
    pub fn add(&mut self, t: &TrialResult) {
        self.trials += 1;
        self.logical_errors += t.logical_failure as u64;
        self.bp_converged += t.bp_converged as u64;
        self.osd_invoked += t.osd_invoked as u64;
        self.invalid_outputs += (t.invalid_output && t.osd_invoked) as u64;
        self.iterations += t.iterations_used as u64;
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.logical_errors += other.logical_errors;
        self.bp_converged += other.bp_converged;
        self.osd_invoked += other.osd_invoked;
        self.invalid_outputs += other.invalid_outputs;
        self.iterations += other.iterations;
        self
    }
}

/// Statistics of one `(code, ε)` point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub epsilon: f64,
    pub trials: u64,
    pub logical_errors: u64,
    pub bp_converged: u64,
    pub osd_invoked: u64,
    pub mean_iters: f64,
    pub ler: f64,
    pub ler_stderr: f64,
    /// OSD outputs that failed to reproduce their syndrome; always 0.
    #[serde(skip)]
    pub invalid_outputs: u64,
}

impl RunStats {
    pub fn from_tally(code: &StabilizerCode, epsilon: f64, t: &Tally) -> Self {
        let trials = t.trials.max(1) as f64;
        let ler = t.logical_errors as f64 / trials;
        RunStats {
            code: code.name.clone(),
            n: code.n,
            k: code.k,
            d: code.d,
            epsilon,
            trials: t.trials,
            logical_errors: t.logical_errors,
            bp_converged: t.bp_converged,
            osd_invoked: t.osd_invoked,
            mean_iters: t.iterations as f64 / trials,
            ler,
            ler_stderr: (ler * (1.0 - ler) / trials).sqrt(),
            invalid_outputs: t.invalid_outputs,
        }
    }

    pub fn bp_convergence_rate(&self) -> f64 {
        self.bp_converged as f64 / self.trials.max(1) as f64
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, SimError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::ThreadPool(e.to_string()))
}

/// Runs trials `0, 1, 2, …` (each on its own RNG stream) until the stop rule
/// fires. Trials are evaluated in parallel batches but consumed in index
/// order, so the result depends only on `seed`, never on `workers`.
pub fn run_point<T: Real>(
    code: &StabilizerCode,
    config: &DecoderConfig,
    epsilon: f64,
    stop: StopRule,
    seed: u64,
    workers: usize,
) -> Result<RunStats, SimError> {
    let channel = ChannelModel::new(epsilon).ok_or(SimError::InvalidEpsilon(epsilon))?;
    if stop.min_logical_errors == 0 {
        return Err(SimError::InvalidStop);
    }
    let pipeline = Pipeline::<T>::new(code, config, epsilon)?;
    let seed = point_seed(seed, &code.name, epsilon);
    let pool = pool(workers)?;
    let batch = (64 * pool.current_num_threads()) as u64;

    let mut tally = Tally::default();
    let mut next = 0u64;
    while tally.trials < stop.max_trials && tally.logical_errors < stop.min_logical_errors {
        let end = (next + batch).min(stop.max_trials);
        let results: Vec<TrialResult> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|i| run_trial(code, &pipeline, &channel, &mut trial_rng(seed, i)))
                .collect::<Result<_, _>>()
        })?;
        for r in &results {
            tally.add(r);
            if tally.logical_errors >= stop.min_logical_errors {
                break;
            }
        }
        next = end;
    }
    Ok(RunStats::from_tally(code, epsilon, &tally))
}

/// Every `(code, ε)` combination, codes outermost.
pub fn sweep<T: Real>(
    codes: &[StabilizerCode],
    epsilons: &[f64],
    config: &DecoderConfig,
    stop: StopRule,
    seed: u64,
    workers: usize,
    mut on_point: impl FnMut(&RunStats),
) -> Result<Vec<RunStats>, SimError> {
    if codes.is_empty() || epsilons.is_empty() {
        return Err(SimError::EmptySweep);
    }
    let mut table = Vec::with_capacity(codes.len() * epsilons.len());
    for code in codes {
        for &eps in epsilons {
            let stats = run_point::<T>(code, config, eps, stop, seed, workers)?;
            on_point(&stats);
            table.push(stats);
        }
    }
    Ok(table)
}
