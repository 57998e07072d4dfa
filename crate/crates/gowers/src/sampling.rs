//! Counter-based deterministic sampling.
//!
//! Estimators derive one independent ChaCha stream per sample index, so the
//! draw for sample `i` depends only on `(seed, i)`.  Any parallel partition
//! of the index range therefore produces bitwise-identical sample sets, and
//! the pairwise reductions in [`crate::numeric`] keep the aggregates
//! identical too.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A master seed from which per-sample generators are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A sequential generator (stream 0) for non-counted uses.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// The generator for sample `index`; depends only on `(seed, index)`.
    pub fn sample_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index.wrapping_add(1));
        rng
    }

    /// A derived master seed for a named sub-experiment.
    pub fn derive(&self, tag: u64) -> SeedStream {
        // splitmix64 step keeps derived streams well separated
        let mut z = self.seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        SeedStream::new(z ^ (z >> 31))
    }
}

/// Maps `f` over sample indices `0..n` in parallel, each index with its own
/// counter-derived generator.  The output order is the index order.
pub fn par_samples<T: Send>(
    seeds: &SeedStream,
    n: usize,
    f: impl Fn(&mut ChaCha8Rng) -> T + Sync,
) -> Vec<T> {
    use rayon::prelude::*;
    (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeds.sample_rng(i);
            f(&mut rng)
        })
        .collect()
}
