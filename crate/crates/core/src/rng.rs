//! Reproducible random streams.
//!
//! Every random choice in the crate is drawn from ChaCha8 (`rand_chacha`).
//! A run seed `s` is expanded with `ChaCha8Rng::seed_from_u64(s)`, and the
//! `i`-th independent worker or sample uses the same key with the ChaCha
//! stream number set to `i`. Streams never overlap, so results do not depend
//! on how work is split between threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Generator for the whole run.
pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` under run seed `seed`.
pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
