//! Deterministic per-chunk random streams.
//!
//! Stochastic work is split into fixed chunks; chunk `i` draws from stream
//! `i` of a ChaCha8 generator keyed by the user seed, so results do not depend
//! on how chunks are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream reserved for pilot draws that precede chunked sampling.
pub const PILOT_STREAM: u64 = u64::MAX;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Splits `total` items into `(start, len)` chunks of at most `chunk` items.
pub fn chunks(total: u64, chunk: u64) -> impl Iterator<Item = (u64, u64)> {
    assert!(chunk > 0);
    (0..total.div_ceil(chunk)).map(move |i| {
        let start = i * chunk;
        (start, chunk.min(total - start))
    })
}
