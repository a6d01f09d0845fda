//! Reproducible random streams.
//!
//! Every random draw in the crate comes from a [`SeedSpec`]: a base seed and a
//! stream index mixed into one 64-bit child seed. Experiments build trees of
//! streams with [`SeedSpec::child`], so replication `r` always sees the same
//! numbers no matter which thread runs it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub base_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub const fn new(base_seed: u64, stream_index: u64) -> Self {
        Self { base_seed, stream_index }
    }

    /// The 64-bit child seed: `mix64(base_seed ^ mix64(stream_index))`.
    pub fn derive(&self) -> u64 {
        mix64(self.base_seed ^ mix64(self.stream_index))
    }

    /// A sub-stream whose base is this stream's derived seed.
    pub fn child(&self, index: u64) -> SeedSpec {
        SeedSpec::new(self.derive(), index)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.derive())
    }
}
