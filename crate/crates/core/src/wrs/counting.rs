//! Exact subset counting for the weight threshold.
//!
//! `D[v, k]` is the number of `k`-subsets of the integer weights whose sum is
//! exactly `v`. It is built by the knapsack recurrence
//! `D_i[v, k] = D_{i-1}[v, k] + D_{i-1}[v - w_i, k - 1]` with the participant
//! dimension rolled away, so memory is `(M + 1) · V` counts.
//!
//! The per-participant counts come from the generating function
//! `d(x, y) = Π (1 + x^{w_j} y)`. Dividing out one factor gives the
//! leave-one-out polynomial `q_M(x) = Σ_m (-1)^m x^{m w_i} d_{M-m}(x)`, and
//! evaluating at `x = 1` (truncated below `x^V`) counts `M`-subsets without
//! `i` that miss the threshold. Prefix sums over `v` make each evaluation
//! `M + 1` table lookups.

use ruint::Uint;

use crate::error::{Error, Result};
use crate::weights::IntegerWeightVector;

/// Exact subset count. 192 bits comfortably hold `C(1000, 20) ≈ 2^138`.
pub type Count = Uint<192, 3>;

/// `C(n, k)`, or `None` if it does not fit a [`Count`].
pub fn binomial(n: u64, k: u64) -> Option<Count> {
    if k > n {
        return Some(Count::ZERO);
    }
    let k = k.min(n - k);
    let mut c = Count::from(1u64);
    for i in 0..k {
        c = c.checked_mul(Count::from(n - i))? / Count::from(i + 1);
    }
    Some(c)
}

/// Final layer of the counting table, stored as prefix sums:
/// `prefix[k][t] = Σ_{v < t} D[v, k]` for `t ∈ [0, V]`.
#[derive(Clone, Debug)]
pub struct SubsetCountLayer {
    size: usize,
    limit: u64,
    prefix: Vec<Vec<Count>>,
}

impl SubsetCountLayer {
    /// Counts all `k ≤ size` subsets with sum below `limit`.
    pub fn build(weights: &IntegerWeightVector, size: usize, limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::PreconditionViolated("count limit V must be at least 1".into()));
        }
        let n = weights.len();
        ensure_capacity(n, size)?;

        let width = usize::try_from(limit).map_err(|_| Error::CountOverflow { population: n, size })?;
        let mut table: Vec<Vec<Count>> = (0..=size).map(|_| vec![Count::ZERO; width + 1]).collect();
        table[0][0] = Count::from(1u64);

        // Ascending order keeps the reachable sums of the processed prefix
        // small until the heavy weights arrive.
        let mut sorted: Vec<u64> = weights.raw().to_vec();
        sorted.sort_unstable();
        let mut running = vec![0u64; n + 1];
        for (i, &w) in sorted.iter().enumerate() {
            running[i + 1] = running[i] + w;
        }

        for (t, &w) in sorted.iter().enumerate() {
            let w = w as usize;
            if w >= width {
                continue;
            }
            let processed = t + 1;
            for k in (1..=size.min(processed)).rev() {
                // Largest reachable k-sum: the k heaviest processed weights.
                let reach = running[processed] - running[processed - k];
                let hi = (reach as usize).min(width - 1);
                if hi < w {
                    continue;
                }
                let (lower, upper) = table.split_at_mut(k);
                let src = &lower[k - 1][..=hi - w];
                let dst = &mut upper[0][w..=hi];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = d.wrapping_add(*s);
                }
            }
        }

        for row in &mut table {
            let mut acc = Count::ZERO;
            for cell in row.iter_mut() {
                let d = *cell;
                *cell = acc;
                acc = acc.wrapping_add(d);
            }
        }

        Ok(Self {
            size,
            limit,
            prefix: table,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The `V` this table was built for; any threshold up to it can be
    /// queried.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `D[v, k]`, the number of `k`-subsets with sum exactly `v < V`.
    pub fn count(&self, v: u64, k: usize) -> Count {
        assert!(v < self.limit && k <= self.size);
        let v = v as usize;
        self.prefix[k][v + 1] - self.prefix[k][v]
    }

    /// Number of `k`-subsets with sum below `threshold ≤ V`.
    pub fn below(&self, threshold: u64, k: usize) -> Count {
        assert!(threshold <= self.limit && k <= self.size);
        self.prefix[k][threshold as usize]
    }
}

/// Rejects `(N, M)` whose counts could leave the 192-bit range. Every table
/// entry is at most `C(N, k)`, and the inclusion–exclusion sums add at most
/// `M + 1` of them.
fn ensure_capacity(population: usize, size: usize) -> Result<()> {
    let overflow = || Error::CountOverflow { population, size };
    let peak = (size as u64).min(population as u64 / 2);
    let largest = binomial(population as u64, peak).ok_or_else(overflow)?;
    largest
        .checked_mul(Count::from(size as u64 + 2))
        .map(|_| ())
        .ok_or_else(overflow)
}

/// `C_i(α)` for every participant: the number of `M`-subsets containing `i`
/// whose integer weight sum is at least `threshold`.
pub fn counts_per_participant(
    weights: &IntegerWeightVector,
    layer: &SubsetCountLayer,
    threshold: u64,
) -> Result<Vec<Count>> {
    assert!(threshold <= layer.limit(), "layer built for a smaller threshold");
    let n = weights.len() as u64;
    let m = layer.size();
    let with_i_total = binomial(n - 1, m as u64 - 1).ok_or(Error::CountOverflow {
        population: n as usize,
        size: m,
    })?;
    let below_total = layer.below(threshold, m);

    weights
        .raw()
        .iter()
        .enumerate()
        .map(|(index, &w)| {
            // q_M(1) = Σ_m (-1)^m Σ_{v < V - m w} D[v, M - m]
            let mut plus = Count::ZERO;
            let mut minus = Count::ZERO;
            for j in 0..=m {
                let shift = (j as u64).saturating_mul(w);
                if shift >= threshold {
                    break;
                }
                let term = layer.below(threshold - shift, m - j);
                if j % 2 == 0 {
                    plus = plus.checked_add(term).expect("capacity checked");
                } else {
                    minus = minus.checked_add(term).expect("capacity checked");
                }
            }
            let without_i = plus.checked_sub(minus).expect("leave-one-out count is non-negative");
            let with_i_below = below_total
                .checked_sub(without_i)
                .expect("subsets without i are a subset of all subsets");
            let count = with_i_total
                .checked_sub(with_i_below)
                .expect("qualifying subsets are a subset of all subsets containing i");
            if count.is_zero() {
                Err(Error::InfeasibleAlpha { index, threshold })
            } else {
                Ok(count)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iw(raw: &[u64]) -> IntegerWeightVector {
        IntegerWeightVector::new(raw.to_vec()).unwrap()
    }

    fn c(x: u64) -> Count {
        Count::from(x)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(c(10)));
        assert_eq!(binomial(4, 7), Some(c(0)));
        assert_eq!(binomial(52, 5), Some(c(2_598_960)));
        let big = binomial(1000, 20).unwrap();
        assert_eq!(big.to_string(), "339482811302457603895512614793686020778700");
    }

    #[test]
    fn small_table_matches_hand_count() {
        let layer = SubsetCountLayer::build(&iw(&[1, 1, 2, 4]), 2, 4).unwrap();
        assert_eq!(layer.count(0, 0), c(1));
        assert_eq!(layer.count(1, 1), c(2));
        assert_eq!(layer.count(2, 1), c(1));
        assert_eq!(layer.count(2, 2), c(1));
        assert_eq!(layer.count(3, 2), c(2));
        for v in 1..4 {
            assert_eq!(layer.count(v, 0), c(0));
        }
    }

    #[test]
    fn equal_weights_fill_diagonal() {
        let layer = SubsetCountLayer::build(&iw(&[3; 7]), 3, 10).unwrap();
        for k in 0..=3usize {
            for v in 0..10u64 {
                let expect = if v == 3 * k as u64 {
                    binomial(7, k as u64).unwrap()
                } else {
                    c(0)
                };
                assert_eq!(layer.count(v, k), expect, "v={v} k={k}");
            }
        }
    }

    #[test]
    fn per_participant_example() {
        let w = iw(&[1, 1, 2, 4]);
        let layer = SubsetCountLayer::build(&w, 2, 4).unwrap();
        let counts = counts_per_participant(&w, &layer, 4).unwrap();
        assert_eq!(counts, vec![c(1), c(1), c(1), c(3)]);
    }

    #[test]
    fn low_threshold_counts_everything() {
        let w = iw(&[5, 6, 7, 8, 9]);
        let layer = SubsetCountLayer::build(&w, 3, 10).unwrap();
        let counts = counts_per_participant(&w, &layer, 10).unwrap();
        assert!(counts.iter().all(|&x| x == binomial(4, 2).unwrap()));
    }

    #[test]
    fn unreachable_threshold_is_infeasible() {
        let w = iw(&[1, 1, 2, 4]);
        let layer = SubsetCountLayer::build(&w, 2, 6).unwrap();
        assert!(matches!(
            counts_per_participant(&w, &layer, 6),
            Err(Error::InfeasibleAlpha { index: 0, threshold: 6 })
        ));
    }

    #[test]
    fn smaller_threshold_reuses_layer() {
        let w = iw(&[1, 1, 2, 4]);
        let big = SubsetCountLayer::build(&w, 2, 5).unwrap();
        let exact = SubsetCountLayer::build(&w, 2, 4).unwrap();
        assert_eq!(
            counts_per_participant(&w, &big, 4).unwrap(),
            counts_per_participant(&w, &exact, 4).unwrap()
        );
    }
}
