//! Reproducible random streams derived from a user seed and a task tag.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when neither a flag nor the environment supplies one.
pub const DEFAULT_SEED: u64 = 20_240_611;

fn fnv1a(bytes: impl IntoIterator<Item = u8>, mut h: u64) -> u64 {
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Independent stream for `tag`; the same `(seed, tag)` always yields the
/// same stream.
pub fn stream(seed: u64, tag: &str) -> ChaCha8Rng {
    let h = fnv1a(seed.to_le_bytes(), 0xcbf2_9ce4_8422_2325);
    ChaCha8Rng::seed_from_u64(fnv1a(tag.bytes(), h))
}

/// Seed for a sub-task, so that parallel work stays reproducible.
pub fn derive(seed: u64, tag: &str) -> u64 {
    let h = fnv1a(seed.to_le_bytes(), 0xcbf2_9ce4_8422_2325);
    fnv1a(tag.bytes(), h)
}
