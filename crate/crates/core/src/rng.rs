//! Seeded randomness.
//!
//! Every random choice in the crate draws from [`Rng64`], which is ChaCha8
//! (`rand_chacha::ChaCha8Rng`) seeded with `seed_from_u64(seed)`. Sweeps give
//! instance `i` its own ChaCha stream (`set_stream(i)`) so that instances can
//! be generated in any order, or concurrently, with identical results.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as Rng64;

pub fn seeded(seed: u64) -> Rng64 {
    Rng64::seed_from_u64(seed)
}

/// Generator for the `index`-th instance of a sweep seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> Rng64 {
    let mut rng = seeded(seed);
    rng.set_stream(index);
    rng
}
