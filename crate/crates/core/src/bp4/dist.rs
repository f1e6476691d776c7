use crate::pauli_algebra::{Pauli, PauliVector};
use crate::scalar::Real;

/// Per-qubit distribution over `{I, X, Y, Z}`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct QuaternaryDist<T> {
    pub i: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> QuaternaryDist<T> {
    pub fn new(i: T, x: T, y: T, z: T) -> Self {
        Self { i, x, y, z }
    }

    /// `(1 − ε, ε/3, ε/3, ε/3)`.
    pub fn depolarizing(epsilon: T) -> Self {
        let third = epsilon / T::lit(3.0);
        Self::new(T::one() - epsilon, third, third, third)
    }

    #[inline]
    pub fn get(&self, p: Pauli) -> T {
        match p {
            Pauli::I => self.i,
            Pauli::X => self.x,
            Pauli::Y => self.y,
            Pauli::Z => self.z,
        }
    }

    pub fn sum(&self) -> T {
        self.i + self.x + self.y + self.z
    }

    pub fn normalized(&self) -> Self {
        let s = self.sum();
        Self::new(self.i / s, self.x / s, self.y / s, self.z / s)
    }

    /// Argmax letter; ties resolve in the order I, X, Y, Z.
    pub fn argmax(&self) -> Pauli {
        let mut best = Pauli::I;
        let mut best_p = self.i;
        for (p, v) in [(Pauli::X, self.x), (Pauli::Y, self.y), (Pauli::Z, self.z)] {
            if v > best_p {
                best = p;
                best_p = v;
            }
        }
        best
    }

    /// `(φˣ, φᶻ)`: confidence in the X bit and in the Z bit.
    #[inline]
    pub fn soft_reliability(&self) -> (T, T) {
        let phi_x = (self.x + self.y).max(self.i + self.z);
        let phi_z = (self.z + self.y).max(self.i + self.x);
        (phi_x, phi_z)
    }
}

/// Per-qubit argmax.
pub fn hard_decision<T: Real>(beliefs: &[QuaternaryDist<T>]) -> PauliVector {
    let mut out = PauliVector::identity(beliefs.len());
    for (i, q) in beliefs.iter().enumerate() {
        out.set(i, q.argmax());
    }
    out
}

/// `(φˣ, φᶻ)` of a normalized distribution.
pub fn soft_reliability<T: Real>(q: &QuaternaryDist<T>) -> (T, T) {
    q.soft_reliability()
}
