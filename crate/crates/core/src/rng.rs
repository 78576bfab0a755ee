//! Deterministic RNG streams.
//!
//! Walk generation derives one independent stream per (seed, start node,
//! walk index) triple so that parallel generation is order-independent and
//! a fixed seed reproduces corpora byte for byte.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; good avalanche, stable across platforms.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// RNG for a (seed, a, b) sub-stream, e.g. (rng_seed, start node, walk index).
pub fn stream(seed: u64, a: u64, b: u64) -> ChaCha8Rng {
    let s = mix(mix(mix(seed) ^ a) ^ b);
    ChaCha8Rng::seed_from_u64(s)
}

/// RNG for a single-label sub-stream, e.g. training or table sampling.
pub fn labeled(seed: u64, label: u64) -> ChaCha8Rng {
    stream(seed, label, 0)
}
