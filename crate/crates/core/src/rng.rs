//! Reproducible random streams.
//!
//! Every random draw in the toolkit comes from ChaCha8 (`rand_chacha`). A
//! [`RngSeed`] is a 64-bit seed plus a 64-bit stream id; the seed is expanded
//! with SplitMix64 into the 256-bit ChaCha key and the stream id selects the
//! ChaCha stream. Two seeds with the same `(seed, stream)` always produce the
//! same sequence, no matter which thread or in which order they are used.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere.
pub type GameRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub const fn new(seed: u64, stream: u64) -> Self {
        RngSeed { seed, stream }
    }

    /// Same stream, independent key: used to give each consumer inside one
    /// trial (graph generator, Alice, Bob) its own sequence.
    pub fn derive(self, tag: u64) -> Self {
        let mut s = self.seed ^ tag.wrapping_mul(0xA076_1D64_78BD_642F);
        RngSeed {
            seed: splitmix64(&mut s),
            stream: self.stream,
        }
    }

    /// Stream `stream` under the same seed.
    pub fn with_stream(self, stream: u64) -> Self {
        RngSeed {
            seed: self.seed,
            stream,
        }
    }

    pub fn rng(self) -> GameRng {
        let mut key = [0u8; 32];
        let mut s = self.seed;
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream);
        rng
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
