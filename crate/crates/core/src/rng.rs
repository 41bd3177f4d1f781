//! Random stream plumbing.
//!
//! Every sampling routine takes an explicit `&mut impl Rng`; nothing in the
//! crate touches a global generator. Sweeps derive one independent stream per
//! trial from a master seed with [`trial_seed`], so results do not depend on
//! how trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for all seeded work. ChaCha output is identical on
/// every platform, which keeps seeded runs bit-reproducible.
pub type SimRng = ChaCha8Rng;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one trial of a sweep, a pure function of the master seed and the
/// grid/trial indices. Appending grid points or trials leaves every existing
/// trial seed unchanged.
pub fn trial_seed(master_seed: u64, p_index: u64, width_index: u64, trial_index: u64) -> u64 {
    let h = mix64(master_seed);
    let h = mix64(h ^ p_index);
    let h = mix64(h ^ width_index.rotate_left(21));
    mix64(h ^ trial_index.rotate_left(42))
}

pub fn seeded(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Uniform `u64` in `0..n` drawn from 64-bit words so the result does not
/// depend on the platform's pointer width.
#[inline]
pub(crate) fn index_below<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}
