//! Scalar-message BP₄.
//!
//! Each Tanner edge `(m, i)` carries one log-ratio per direction. The
//! qubit-to-check message is
//! `λ = ln P(E commutes with S_mi) / P(E anticommutes with S_mi)` and the
//! check-to-qubit message is `Δ = (−1)^{z_m} · 2 atanh ∏ tanh(λ'/2)` over
//! the other qubits of check `m`. A qubit's letter LLRs are
//! `Γ^W = ln(p^I / p^W) + (1/α) Σ_{m : W anticommutes S_mi} Δ_{m→i}` and
//! the outgoing message is `λ_{S_mi}(Γ) − Δ_{m→i}`, which for `α = 1` is
//! exactly the extrinsic message.

use crate::codes::StabilizerCode;
use crate::pauli_algebra::{CheckMatrix, Pauli, PauliVector, Syndrome};
use crate::scalar::Real;

use super::dist::{hard_decision, QuaternaryDist};
use super::reliability::update_reliability_vec;
use super::{BpConfig, BpError, Schedule};

const MESSAGE_CLAMP: f64 = 30.0;
const TANH_MARGIN: f64 = 1e-12;

const LETTERS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

/// Sparse Tanner graph; edges are numbered check-major.
#[derive(Clone, Debug)]
struct TannerGraph {
    edge_qubit: Vec<usize>,
    edge_check: Vec<usize>,
    edge_letter: Vec<Pauli>,
    check_edges: Vec<Vec<usize>>,
    qubit_edges: Vec<Vec<usize>>,
}

impl TannerGraph {
    fn new(check: &CheckMatrix) -> Self {
        let mut edge_qubit = Vec::new();
        let mut edge_check = Vec::new();
        let mut edge_letter = Vec::new();
        let mut check_edges = vec![Vec::new(); check.m()];
        let mut qubit_edges = vec![Vec::new(); check.n()];
        for (c, row) in check.rows().iter().enumerate() {
            let support = row.x_bits().iter_ones().chain(row.z_bits().iter_ones());
            let mut qubits: Vec<usize> = support.collect();
            qubits.sort_unstable();
            qubits.dedup();
            for q in qubits {
                let e = edge_qubit.len();
                edge_qubit.push(q);
                edge_check.push(c);
                edge_letter.push(row.get(q));
                check_edges[c].push(e);
                qubit_edges[q].push(e);
            }
        }
        Self {
            edge_qubit,
            edge_check,
            edge_letter,
            check_edges,
            qubit_edges,
        }
    }

    fn num_edges(&self) -> usize {
        self.edge_qubit.len()
    }
}

/// Mutable decoder state for one syndrome.
#[derive(Clone, Debug)]
pub struct BeliefState<T> {
    pub beliefs: Vec<QuaternaryDist<T>>,
    /// qubit-to-check `λ`, indexed by edge
    pub qubit_to_check: Vec<T>,
    /// check-to-qubit `Δ`, indexed by edge
    pub check_to_qubit: Vec<T>,
    /// `tanh(λ/2)` per edge, kept in sync with `qubit_to_check`
    pub(crate) half_tanh: Vec<T>,
    pub ell: Vec<usize>,
    pub last_decision: PauliVector,
    pub iteration_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeStatus {
    Converged,
    Exhausted,
}

/// Result of a BP run, carrying everything OSD needs when BP gives up.
#[derive(Clone, Debug)]
pub struct DecodeOutcome<T> {
    pub status: DecodeStatus,
    /// Hard decision at the final iteration.
    pub estimate: PauliVector,
    pub beliefs: Vec<QuaternaryDist<T>>,
    pub ell: Vec<usize>,
    pub iterations_used: usize,
}

impl<T> DecodeOutcome<T> {
    pub fn converged(&self) -> bool {
        self.status == DecodeStatus::Converged
    }
}

/// BP₄ decoder bound to one check matrix. Immutable and `Sync`; each decode
/// owns its own [`BeliefState`].
#[derive(Clone, Debug)]
pub struct Bp4Decoder<T> {
    graph: TannerGraph,
    n: usize,
    m: usize,
    config: BpConfig,
    prior: QuaternaryDist<T>,
    prior_llr: T,
    inv_alpha: T,
    clamp: T,
    tanh_bound: T,
}

#[inline]
fn softplus_neg<T: Real>(g: T) -> T {
    // ln(1 + e^{-g})
    if g > T::zero() {
        (-g).exp().ln_1p()
    } else {
        -g + g.exp().ln_1p()
    }
}

#[inline]
fn log_sum_exp<T: Real>(a: T, b: T) -> T {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

impl<T: Real> Bp4Decoder<T> {
    pub fn new(check: &CheckMatrix, config: BpConfig) -> Result<Self, BpError> {
        config.validate()?;
        let eps = T::lit(config.prior_epsilon);
        let prior = QuaternaryDist::depolarizing(eps);
        let prior_llr = (prior.i / prior.x).ln();
        let margin = T::lit(TANH_MARGIN).max(T::epsilon() * T::lit(4.0));
        Ok(Self {
            graph: TannerGraph::new(check),
            n: check.n(),
            m: check.m(),
            config,
            prior,
            prior_llr,
            inv_alpha: T::one() / T::lit(config.alpha()),
            clamp: T::lit(MESSAGE_CLAMP),
            tanh_bound: T::one() - margin,
        })
    }

    pub fn for_code(code: &StabilizerCode, config: BpConfig) -> Result<Self, BpError> {
        Self::new(&code.check, config)
    }

    pub fn config(&self) -> &BpConfig {
        &self.config
    }

    #[inline]
    fn clamp_msg(&self, v: T) -> T {
        v.max(-self.clamp).min(self.clamp)
    }

    /// `λ_S(Γ)`: log-odds that the qubit commutes with letter `s`.
    #[inline]
    fn commute_llr(gamma: &[T; 3], s: Pauli) -> T {
        let (own, a, b) = match s {
            Pauli::X => (gamma[0], gamma[1], gamma[2]),
            Pauli::Y => (gamma[1], gamma[0], gamma[2]),
            Pauli::Z => (gamma[2], gamma[0], gamma[1]),
            Pauli::I => unreachable!("no Tanner edge for identity"),
        };
        softplus_neg(own) - log_sum_exp(-a, -b)
    }

    pub fn init_state(&self) -> BeliefState<T> {
        let gamma = [self.prior_llr; 3];
        let q2c: Vec<T> = self
            .graph
            .edge_letter
            .iter()
            .map(|&s| self.clamp_msg(Self::commute_llr(&gamma, s)))
            .collect();
        let half = T::lit(0.5);
        BeliefState {
            beliefs: vec![self.prior; self.n],
            half_tanh: q2c.iter().map(|&l| (l * half).tanh()).collect(),
            qubit_to_check: q2c,
            check_to_qubit: vec![T::zero(); self.graph.num_edges()],
            ell: vec![1; self.n],
            last_decision: PauliVector::identity(self.n),
            iteration_count: 0,
        }
    }

    fn check_message(&self, state: &BeliefState<T>, check: usize, edge: usize, flip: bool) -> T {
        let mut prod = T::one();
        for &e in &self.graph.check_edges[check] {
            if e != edge {
                prod = prod * state.half_tanh[e];
            }
        }
        let prod = prod.max(-self.tanh_bound).min(self.tanh_bound);
        let delta = T::lit(2.0) * prod.atanh();
        self.clamp_msg(if flip { -delta } else { delta })
    }

    fn update_qubit(&self, state: &mut BeliefState<T>, q: usize) {
        let mut gamma = [self.prior_llr; 3];
        for &e in &self.graph.qubit_edges[q] {
            let s = self.graph.edge_letter[e];
            let d = state.check_to_qubit[e] * self.inv_alpha;
            for (g, w) in gamma.iter_mut().zip(LETTERS) {
                if w.anticommutes(s) {
                    *g = *g + d;
                }
            }
        }
        let floor = gamma.iter().fold(T::zero(), |acc, &g| acc.min(g));
        let wi = floor.exp();
        let [wx, wy, wz] = gamma.map(|g| (floor - g).exp());
        let total = wi + wx + wy + wz;
        state.beliefs[q] = QuaternaryDist::new(wi / total, wx / total, wy / total, wz / total);
        let half = T::lit(0.5);
        // three distinct values per qubit, however many edges it has
        let commute = [Pauli::X, Pauli::Y, Pauli::Z].map(|s| Self::commute_llr(&gamma, s));
        for &e in &self.graph.qubit_edges[q] {
            let s = self.graph.edge_letter[e];
            let lambda = self.clamp_msg(commute[s.index() - 1] - state.check_to_qubit[e]);
            state.qubit_to_check[e] = lambda;
            state.half_tanh[e] = (lambda * half).tanh();
        }
    }

    /// One full sweep under the configured schedule.
    pub fn iterate(&self, state: &mut BeliefState<T>, syndrome: &Syndrome) {
        match self.config.schedule {
            Schedule::Serial => {
                for q in 0..self.n {
                    for k in 0..self.graph.qubit_edges[q].len() {
                        let e = self.graph.qubit_edges[q][k];
                        let check = self.graph.edge_check[e];
                        state.check_to_qubit[e] =
                            self.check_message(state, check, e, syndrome.get(check));
                    }
                    self.update_qubit(state, q);
                }
            }
            Schedule::Parallel => {
                for check in 0..self.m {
                    for &e in &self.graph.check_edges[check] {
                        state.check_to_qubit[e] =
                            self.check_message(state, check, e, syndrome.get(check));
                    }
                }
                for q in 0..self.n {
                    self.update_qubit(state, q);
                }
            }
        }
        state.iteration_count += 1;
    }

    /// Sparse syndrome of a hard decision.
    pub fn matches(&self, estimate: &PauliVector, syndrome: &Syndrome) -> bool {
        self.graph.check_edges.iter().enumerate().all(|(c, edges)| {
            let parity = edges.iter().fold(false, |acc, &e| {
                acc ^ self.graph.edge_letter[e].anticommutes(estimate.get(self.graph.edge_qubit[e]))
            });
            parity == syndrome.get(c)
        })
    }

    /// Iterates until the hard decision reproduces `syndrome` or the
    /// iteration cap is hit.
    pub fn decode(&self, syndrome: &Syndrome) -> Result<DecodeOutcome<T>, BpError> {
        if syndrome.len() != self.m {
            return Err(BpError::SyndromeLength {
                expected: self.m,
                found: syndrome.len(),
            });
        }
        let mut state = self.init_state();
        let mut decision = state.last_decision.clone();
        for _ in 0..self.config.max_iterations {
            self.iterate(&mut state, syndrome);
            decision = hard_decision(&state.beliefs);
            if self.matches(&decision, syndrome) {
                return Ok(DecodeOutcome {
                    status: DecodeStatus::Converged,
                    estimate: decision,
                    beliefs: state.beliefs,
                    ell: state.ell,
                    iterations_used: state.iteration_count,
                });
            }
            update_reliability_vec(&state.last_decision, &decision, &mut state.ell)?;
            state.last_decision = decision.clone();
        }
        Ok(DecodeOutcome {
            status: DecodeStatus::Exhausted,
            estimate: decision,
            beliefs: state.beliefs,
            ell: state.ell,
            iterations_used: state.iteration_count,
        })
    }
}

/// Fresh state: prior beliefs, `ℓ = 1`, identity decision.
pub fn init_decoder<T: Real>(code: &StabilizerCode, config: &BpConfig) -> Result<BeliefState<T>, BpError> {
    Ok(Bp4Decoder::<T>::for_code(code, *config)?.init_state())
}

/// One BP₄ sweep on `state`.
pub fn bp4_iteration<T: Real>(
    state: &mut BeliefState<T>,
    code: &StabilizerCode,
    syndrome: &Syndrome,
    config: &BpConfig,
) -> Result<(), BpError> {
    if syndrome.len() != code.m() {
        return Err(BpError::SyndromeLength {
            expected: code.m(),
            found: syndrome.len(),
        });
    }
    Bp4Decoder::<T>::for_code(code, *config)?.iterate(state, syndrome);
    Ok(())
}

pub fn decode<T: Real>(
    code: &StabilizerCode,
    syndrome: &Syndrome,
    config: &BpConfig,
) -> Result<DecodeOutcome<T>, BpError> {
    Bp4Decoder::<T>::for_code(code, *config)?.decode(syndrome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{surface_code, toric_code};
    use crate::pauli_algebra::syndrome_of;

    #[test]
    fn init_matches_prior() {
        let code = toric_code(3).unwrap();
        let cfg = BpConfig::default().with_epsilon(0.1);
        let state: BeliefState<f64> = init_decoder(&code, &cfg).unwrap();
        for q in &state.beliefs {
            assert!((q.i - 0.9).abs() < 1e-12);
            assert!((q.x - 0.1 / 3.0).abs() < 1e-12);
            assert!((q.y - 0.1 / 3.0).abs() < 1e-12);
            assert!((q.z - 0.1 / 3.0).abs() < 1e-12);
        }
        assert!(state.ell.iter().all(|&l| l == 1));
        assert!(state.last_decision.is_identity());
        assert_eq!(state.iteration_count, 0);
        assert!(init_decoder::<f64>(&code, &BpConfig::default().with_epsilon(1.5)).is_err());
    }

    #[test]
    fn zero_syndrome_converges_immediately() {
        let code = surface_code(3).unwrap();
        for schedule in [Schedule::Serial, Schedule::Parallel] {
            let cfg = BpConfig {
                schedule,
                ..BpConfig::default().with_epsilon(0.05)
            };
            let out: DecodeOutcome<f64> = decode(&code, &Syndrome::zeros(code.m()), &cfg).unwrap();
            assert!(out.converged());
            assert_eq!(out.iterations_used, 1);
            assert!(out.estimate.is_identity());
        }
    }

    #[test]
    fn normalization_each_iteration() {
        let code = toric_code(4).unwrap();
        let e: PauliVector = PauliVector::from_sparse(code.n, &[(0, Pauli::Y), (7, Pauli::X), (20, Pauli::Z)]);
        let z = syndrome_of(&code.check, &e).unwrap();
        let dec = Bp4Decoder::<f64>::for_code(&code, BpConfig::default().with_epsilon(0.08)).unwrap();
        let mut st = dec.init_state();
        for _ in 0..20 {
            dec.iterate(&mut st, &z);
            for q in &st.beliefs {
                assert!((q.sum() - 1.0).abs() < 1e-9);
                assert!(q.i >= 0.0 && q.x >= 0.0 && q.y >= 0.0 && q.z >= 0.0);
            }
        }
    }

    #[test]
    fn syndrome_length_checked() {
        let code = toric_code(2).unwrap();
        let r: Result<DecodeOutcome<f64>, _> = decode(&code, &Syndrome::zeros(3), &BpConfig::default());
        assert!(matches!(r, Err(BpError::SyndromeLength { .. })));
    }

    #[test]
    fn f32_decodes_single_error() {
        let code = surface_code(3).unwrap();
        let e = PauliVector::from_sparse(code.n, &[(6, Pauli::X)]);
        let z = syndrome_of(&code.check, &e).unwrap();
        let out: DecodeOutcome<f32> = decode(&code, &z, &BpConfig::default().with_epsilon(0.01)).unwrap();
        assert!(out.converged());
    }
}
