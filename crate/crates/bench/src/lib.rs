//! Fixtures shared by the benchmarks.

use dihedral_pgm::{BlockLabel, SeedSplitter};
use rand::Rng;

/// `count` uniform labels in `Z_N^k`, reproducible from `seed`.
pub fn random_labels(n: usize, k: usize, count: usize, seed: u64) -> Vec<BlockLabel> {
    let mut rng = SeedSplitter::new(seed).stream(0);
    (0..count)
        .map(|_| {
            BlockLabel::new(n, (0..k).map(|_| rng.random_range(0..n)).collect())
                .expect("valid label")
        })
        .collect()
}
