//! Seeded random streams.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`). A run seed
//! selects the key; independent work items (a bootstrap replicate, a
//! simulated question, a convergence resample) each get their own 64-bit
//! stream id under that key, so items can be generated in any order or in
//! parallel without changing the draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for work item `stream` of the run keyed by `seed`.
pub fn substream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream id for a two-level index such as (trial count, resample).
pub(crate) fn stream_id(outer: usize, inner: usize) -> u64 {
    ((outer as u64) << 32) | (inner as u64 & 0xffff_ffff)
}
