//! Counter-based stream splitting: every trial gets its own ChaCha stream
//! addressed by `(point seed, trial index)`, so results do not depend on
//! which worker runs which trial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

/// Seed for one `(code, ε)` point of a sweep, independent of grid position.
pub fn point_seed(base: u64, code_label: &str, epsilon: f64) -> u64 {
    splitmix64(splitmix64(base ^ fnv1a(code_label.as_bytes())) ^ epsilon.to_bits())
}

/// Independent stream for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
