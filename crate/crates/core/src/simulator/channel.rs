use rand::Rng;

use crate::pauli_algebra::{Pauli, PauliVector};

/// I.i.d. depolarizing noise: each of X, Y, Z with probability `ε/3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelModel {
    pub epsilon: f64,
}

impl ChannelModel {
    pub fn new(epsilon: f64) -> Option<Self> {
        (0.0..=1.0).contains(&epsilon).then_some(Self { epsilon })
    }

    pub fn probabilities(&self) -> [f64; 4] {
        let t = self.epsilon / 3.0;
        [1.0 - self.epsilon, t, t, t]
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> PauliVector {
        sample_depolarizing(n, self.epsilon, rng)
    }
}

pub fn sample_depolarizing<R: Rng + ?Sized>(n: usize, epsilon: f64, rng: &mut R) -> PauliVector {
    let mut e = PauliVector::identity(n);
    let third = epsilon / 3.0;
    for q in 0..n {
        let u: f64 = rng.gen();
        if u < epsilon {
            let letter = if u < third {
                Pauli::X
            } else if u < 2.0 * third {
                Pauli::Y
            } else {
                Pauli::Z
            };
            e.set(q, letter);
        }
    }
    e
}
