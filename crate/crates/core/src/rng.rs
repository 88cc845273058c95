//! Deterministic randomness for committee selection.
//!
//! Every algorithm in this crate draws its randomness from a [`PrngStream`],
//! a thin wrapper over ChaCha8 with an explicit layout:
//!
//! * the 256-bit key is the little-endian seed in bytes `0..8`, zeros after,
//! * the ChaCha stream id is the lane, so `(seed, lane)` pairs give
//!   independent streams for parallel work,
//! * the counter is the number of 64-bit words consumed so far; word `k`
//!   sits at ChaCha word position `2k`.
//!
//! Unit draws take the top 53 bits of a word, so they lie in `[0, 1)`.
//! Bounded integers use Lemire's widening-multiply rejection method. Neither
//! depends on the platform or on `rand`'s distribution code, so outputs are
//! stable across releases; golden vectors in the tests pin them.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Clone, Debug)]
pub struct PrngStream {
    seed: u64,
    lane: u64,
    counter: u64,
    core: ChaCha8Rng,
}

impl PrngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_lane(seed, 0)
    }

    /// Independent stream `lane` under the same seed.
    pub fn with_lane(seed: u64, lane: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut core = ChaCha8Rng::from_seed(key);
        core.set_stream(lane);
        Self {
            seed,
            lane,
            counter: 0,
            core,
        }
    }

    /// Stream positioned so that the next draw is word number `counter`.
    pub fn at(seed: u64, lane: u64, counter: u64) -> Self {
        let mut stream = Self::with_lane(seed, lane);
        stream.core.set_word_pos(u128::from(counter) * 2);
        stream.counter = counter;
        stream
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn lane(&self) -> u64 {
        self.lane
    }

    /// Number of 64-bit words drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        self.core.next_u64()
    }

    /// Uniform draw in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }

    /// Uniform integer in `[0, bound)`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut product = u128::from(self.next_u64()) * u128::from(bound);
        let mut low = product as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                product = u128::from(self.next_u64()) * u128::from(bound);
                low = product as u64;
            }
        }
        (product >> 64) as u64
    }

    /// Fisher-Yates shuffle of the whole slice.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
