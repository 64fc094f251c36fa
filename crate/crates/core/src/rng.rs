//! Seedable random streams.
//!
//! Every stream is a [`ChaCha8Rng`]. Its output is specified bit-for-bit by
//! the ChaCha reference, so a seed yields the same sequence on every
//! platform. Independent trial streams are derived from a base seed and a
//! trial index with [`derive_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every run.
pub type Stream = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for trial `index` of an experiment seeded with `base`:
/// `mix64(base ^ mix64(index + GOLDEN_GAMMA))`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(base ^ mix64(index.wrapping_add(GOLDEN_GAMMA)))
}

/// Stream owned by trial `index` of an experiment seeded with `base`.
pub fn trial_stream(base: u64, index: u64) -> Stream {
    Stream::seed_from_u64(derive_seed(base, index))
}

/// Stream seeded directly, without index mixing.
pub fn stream(seed: u64) -> Stream {
    Stream::seed_from_u64(seed)
}
