use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bp4::QuaternaryDist;
use crate::scalar::Real;

/// Which reliability order drives the column sort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ReliabilityMode {
    /// Hard-decision run length first, soft reliability second.
    #[default]
    Osd4,
    /// Soft reliability only.
    Mosd4,
}

/// Sort key for one error bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReliabilityKey<T> {
    pub qubit: usize,
    /// `false` for the X half, `true` for the Z half.
    pub z_half: bool,
    pub ell: usize,
    pub phi: T,
}

impl<T: Real> ReliabilityKey<T> {
    /// Coordinate in the `2n`-bit vector `[x | z]`.
    pub fn coordinate(&self, n: usize) -> usize {
        if self.z_half {
            n + self.qubit
        } else {
            self.qubit
        }
    }

    /// Ascending reliability; equal keys fall back to (qubit, X before Z).
    fn cmp_in(&self, other: &Self, mode: ReliabilityMode) -> Ordering {
        let by_ell = match mode {
            ReliabilityMode::Osd4 => self.ell.cmp(&other.ell),
            ReliabilityMode::Mosd4 => Ordering::Equal,
        };
        by_ell
            .then_with(|| self.phi.partial_cmp(&other.phi).unwrap_or(Ordering::Equal))
            .then_with(|| self.qubit.cmp(&other.qubit))
            .then_with(|| self.z_half.cmp(&other.z_half))
    }
}

/// Reliability keys for all `2n` bits, qubit-major with X before Z.
pub fn reliability_keys<T: Real>(ell: &[usize], beliefs: &[QuaternaryDist<T>]) -> Vec<ReliabilityKey<T>> {
    assert_eq!(ell.len(), beliefs.len(), "ell and beliefs differ in length");
    let mut keys = Vec::with_capacity(2 * ell.len());
    for (qubit, (&l, q)) in ell.iter().zip(beliefs).enumerate() {
        let (phi_x, phi_z) = q.soft_reliability();
        keys.push(ReliabilityKey { qubit, z_half: false, ell: l, phi: phi_x });
        keys.push(ReliabilityKey { qubit, z_half: true, ell: l, phi: phi_z });
    }
    keys
}

/// Permutation `π` over the `2n` bit coordinates, least reliable first:
/// `π[c]` is the original coordinate placed at column `c`.
pub fn sort_reliability<T: Real>(
    ell: &[usize],
    beliefs: &[QuaternaryDist<T>],
    mode: ReliabilityMode,
) -> Vec<usize> {
    let n = ell.len();
    let mut keys = reliability_keys(ell, beliefs);
    keys.sort_by(|a, b| a.cmp_in(b, mode));
    keys.iter().map(|k| k.coordinate(n)).collect()
}

/// Same order computed from explicit `(φˣ, φᶻ)` pairs.
pub fn sort_reliability_from_phi<T: Real>(
    ell: &[usize],
    phi: &[(T, T)],
    mode: ReliabilityMode,
) -> Vec<usize> {
    let n = ell.len();
    let mut keys: Vec<ReliabilityKey<T>> = ell
        .iter()
        .zip(phi)
        .enumerate()
        .flat_map(|(qubit, (&l, &(px, pz)))| {
            [
                ReliabilityKey { qubit, z_half: false, ell: l, phi: px },
                ReliabilityKey { qubit, z_half: true, ell: l, phi: pz },
            ]
        })
        .collect();
    keys.sort_by(|a, b| a.cmp_in(b, mode));
    keys.iter().map(|k| k.coordinate(n)).collect()
}
