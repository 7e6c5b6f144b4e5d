//! Shared fixtures for the benchmarks.

use boolnl::TruthTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniformly random table on `n` variables, reproducible from `seed`.
pub fn random_table(n: u32, seed: u64) -> TruthTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = (0..(1usize << n.saturating_sub(6)))
        .map(|_| rng.gen())
        .collect();
    TruthTable::from_words(n, words).expect("n within cap")
}
