//! Seeded, splittable random streams.
//!
//! Every Monte Carlo routine takes a [`SeedSplitter`] (or a seed that becomes
//! one) and derives one ChaCha8 stream per shard. Shard boundaries are fixed
//! by sample index, never by thread count, so results depend only on the seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used by all sampling operations.
pub type SimRng = ChaCha8Rng;

/// Seed used by the CLI when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 2005;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSplitter {
    seed: u64,
}

impl SeedSplitter {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream number `id` of this seed.
    pub fn stream(&self, id: u64) -> SimRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        rng
    }

    /// A derived splitter for a labelled sub-task (e.g. one row of a sweep).
    pub fn child(&self, tag: u64) -> SeedSplitter {
        SeedSplitter::new(splitmix64(self.seed ^ splitmix64(tag.wrapping_add(0x9E37_79B9_7F4A_7C15))))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
