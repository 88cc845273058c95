//! Uniform `M`-subsets of `[0, N)` by partial Fisher-Yates.

use crate::error::{Error, Result};
use crate::rng::PrngStream;

/// Reusable partial shuffle. Each draw touches `M` positions and restores
/// them afterwards, so repeated draws cost `O(M)` rather than `O(N)`.
#[derive(Clone, Debug)]
pub struct SubsetSampler {
    slots: Vec<usize>,
    swaps: Vec<usize>,
}

impl SubsetSampler {
    pub fn new(population: usize) -> Self {
        Self {
            slots: (0..population).collect(),
            swaps: Vec::new(),
        }
    }

    pub fn population(&self) -> usize {
        self.slots.len()
    }

    /// Writes a uniformly random `size`-subset into `out` (cleared first),
    /// in draw order.
    pub fn draw_into(&mut self, size: usize, stream: &mut PrngStream, out: &mut Vec<usize>) -> Result<()> {
        let n = self.slots.len();
        if size > n {
            return Err(Error::SizeExceedsPopulation { size, population: n });
        }
        out.clear();
        self.swaps.clear();
        for i in 0..size {
            let j = i + stream.below((n - i) as u64) as usize;
            self.slots.swap(i, j);
            self.swaps.push(j);
            out.push(self.slots[i]);
        }
        for (i, &j) in self.swaps.iter().enumerate().rev() {
            self.slots.swap(i, j);
        }
        Ok(())
    }
}

/// Uniform random `size`-subset of `[0, population)`, sorted ascending.
pub fn sample_uniform_subset(stream: &mut PrngStream, population: usize, size: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(size);
    SubsetSampler::new(population).draw_into(size, stream, &mut out)?;
    out.sort_unstable();
    Ok(out)
}
