//! Reproducible random-number substreams.
//!
//! Every randomized routine in this crate draws from a ChaCha8 generator
//! keyed by the master seed, with the 64-bit ChaCha stream counter carrying
//! a substream index (trial number, round/attempt pair, ...). Distinct
//! indices give statistically independent streams from the same key, so
//! trials can run in any order — or in parallel on any number of workers —
//! and still produce bit-identical draws per trial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Returns the generator for substream `index` of `master_seed`.
///
/// The construction is `ChaCha8(key = master_seed, stream = index)`: the
/// key is expanded by `seed_from_u64`, and the index is placed in the
/// ChaCha stream field, which selects one of 2^64 disjoint keystreams.
pub fn substream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Packs a (round, attempt) pair into one substream index: rounds in the
/// high 44 bits, attempts in the low 20. Round counts and retry budgets are
/// far below these limits.
pub fn round_attempt_index(round: u64, attempt: u32) -> u64 {
    debug_assert!(attempt < (1 << 20));
    (round << 20) | attempt as u64
}
