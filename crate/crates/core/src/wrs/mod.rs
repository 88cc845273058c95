//! Weighted rejection sampling.
//!
//! A uniform `M`-subset is accepted only if its total weight reaches the
//! fraction `α` of all stake, and then with probability proportional to the
//! sum of its acceptance weights `p_i ∝ w_i / C_i(α)`, where `C_i(α)` counts
//! the qualifying committees that contain `i`. Members receive raw weight
//! `p_i`, so seats carry unequal voting power.

mod counting;

pub use counting::{binomial, counts_per_participant, Count, SubsetCountLayer};

use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, Sortition, DEFAULT_MAX_ROUNDS};
use crate::crs::top_sum;
use crate::error::{Error, Result};
use crate::metrics::{DecentralizationReport, LambdaKind, ReportDetails};
use crate::outcome::SelectionOutcome;
use crate::rng::PrngStream;
use crate::subset::SubsetSampler;
use crate::weights::{IntegerWeightVector, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WrsConfig {
    pub size: usize,
    pub alpha: f64,
}

impl WrsConfig {
    pub fn new(size: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if size == 0 {
            return Err(Error::EmptyCommittee);
        }
        Ok(Self { size, alpha })
    }

    /// Integer threshold `V = ⌈α W⌉`; committees with raw sum below `V` are
    /// rejected.
    pub fn threshold(&self, total: u64) -> u64 {
        threshold_for(self.alpha, total)
    }
}

/// `⌈α W⌉`, treating products within 1e-9 relative of an integer as that
/// integer so decimal alphas like `0.7` do not round up spuriously.
pub fn threshold_for(alpha: f64, total: u64) -> u64 {
    let x = alpha * total as f64;
    let nearest = x.round();
    let v = if (x - nearest).abs() <= 1e-9 * x.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    (v as u64).max(1)
}

/// Closed-form check that every participant belongs to at least one
/// qualifying committee: `w_i` plus the `M - 1` heaviest others reach `V`.
pub fn check_strong_feasibility(weights: &IntegerWeightVector, size: usize, threshold: u64) -> Result<()> {
    let n = weights.len();
    if size >= n {
        return Err(Error::PopulationTooSmall { population: n, size });
    }
    let raw = weights.raw();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[b].cmp(&raw[a]).then(a.cmp(&b)));
    let top: u64 = order[..size].iter().map(|&i| raw[i]).sum();
    let top_minus_one: u64 = top - raw[order[size - 1]];
    let mut in_top = vec![false; n];
    for &i in &order[..size - 1] {
        in_top[i] = true;
    }
    for (index, &w) in raw.iter().enumerate() {
        let best = if in_top[index] { top } else { top_minus_one + w };
        if best < threshold {
            return Err(Error::InfeasibleAlpha { index, threshold });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WrsWeights {
    /// `C_i(α)` as exact integers.
    #[serde(serialize_with = "serialize_counts", deserialize_with = "deserialize_counts")]
    pub counts: Vec<Count>,
    pub p: Vec<f64>,
    /// Largest `Σ p` over an `M`-subset.
    pub acceptance_scale: f64,
}

fn serialize_counts<S: serde::Serializer>(counts: &[Count], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(counts.iter().map(|c| c.to_string()))
}

fn deserialize_counts<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Count>, D::Error> {
    let texts: Vec<String> = Deserialize::deserialize(d)?;
    texts
        .iter()
        .map(|t| t.parse::<Count>().map_err(serde::de::Error::custom))
        .collect()
}

impl WrsWeights {
    /// Runs the counting program and derives `p`.
    pub fn new(weights: &IntegerWeightVector, config: &WrsConfig) -> Result<Self> {
        let threshold = config.threshold(weights.total());
        check_strong_feasibility(weights, config.size, threshold)?;
        let layer = SubsetCountLayer::build(weights, config.size, threshold)?;
        Self::from_layer(weights, &layer, threshold)
    }

    /// Derives the weights for `threshold` from a table built for any limit
    /// at least as large.
    pub fn from_layer(weights: &IntegerWeightVector, layer: &SubsetCountLayer, threshold: u64) -> Result<Self> {
        let counts = counts_per_participant(weights, layer, threshold)?;
        Ok(Self::from_counts(weights, counts, layer.size()))
    }

    /// `p_i = (w_i / C_i) / Σ_j (w_j / C_j)`.
    pub fn from_counts(weights: &IntegerWeightVector, counts: Vec<Count>, size: usize) -> Self {
        // Ratios against C(N-1, M-1) keep the magnitudes near 1.
        let reference = f64::from(binomial(weights.len() as u64 - 1, size as u64 - 1).unwrap_or(Count::MAX));
        let raw: Vec<f64> = weights
            .raw()
            .iter()
            .zip(&counts)
            .map(|(&w, c)| w as f64 * (reference / f64::from(c)))
            .collect();
        let total: f64 = raw.iter().sum();
        let p: Vec<f64> = raw.iter().map(|r| r / total).collect();
        let acceptance_scale = top_sum(&p, size);
        Self {
            counts,
            p,
            acceptance_scale,
        }
    }
}

/// `F_i`: the sum of the `M - 1` smallest `p_j` with `j ≠ i`.
pub fn smallest_others(p: &[f64], size: usize) -> Vec<f64> {
    let k = size - 1;
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p[a].total_cmp(&p[b]).then(a.cmp(&b)));
    let mut rank = vec![0usize; p.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let first_k: f64 = order.iter().take(k).map(|&i| p[i]).sum();
    let first_k1: f64 = order.iter().take(k + 1).map(|&i| p[i]).sum();
    (0..p.len())
        .map(|i| if rank[i] < k { first_k1 - p[i] } else { first_k })
        .collect()
}

/// Lower bound `λ ≥ min_i w_i (1 + F_i / p_i)`.
pub fn wrs_lambda_bound(weights: &WeightVector, wrs: &WrsWeights, size: usize) -> f64 {
    smallest_others(&wrs.p, size)
        .iter()
        .zip(&wrs.p)
        .zip(weights.as_slice())
        .map(|((f, p), w)| w * (1.0 + f / p))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug)]
pub struct WeightedRejection {
    stakes: IntegerWeightVector,
    weights: WeightVector,
    config: WrsConfig,
    threshold: u64,
    wrs: WrsWeights,
    max_rounds: u64,
}

impl WeightedRejection {
    pub fn new(stakes: IntegerWeightVector, config: WrsConfig) -> Result<Self> {
        let wrs = WrsWeights::new(&stakes, &config)?;
        Ok(Self::with_weights(stakes, config, wrs))
    }

    /// Uses precomputed (or deliberately altered) acceptance weights.
    pub fn with_weights(stakes: IntegerWeightVector, config: WrsConfig, wrs: WrsWeights) -> Self {
        let threshold = config.threshold(stakes.total());
        Self {
            weights: stakes.normalized(),
            stakes,
            config,
            threshold,
            wrs,
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }

    pub fn with_max_rounds(mut self, max_rounds: u64) -> Self {
        self.max_rounds = max_rounds.max(1);
        self
    }

    pub fn config(&self) -> WrsConfig {
        self.config
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn stakes(&self) -> &IntegerWeightVector {
        &self.stakes
    }

    pub fn wrs_weights(&self) -> &WrsWeights {
        &self.wrs
    }

    pub fn lambda_bound(&self) -> f64 {
        wrs_lambda_bound(&self.weights, &self.wrs, self.config.size)
    }
}

impl Sortition for WeightedRejection {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Wrs
    }

    fn weights(&self) -> &WeightVector {
        &self.weights
    }

    fn committee_size(&self) -> usize {
        self.config.size
    }

    fn select(&self, stream: &mut PrngStream) -> Result<SelectionOutcome> {
        let raw = self.stakes.raw();
        let mut sampler = SubsetSampler::new(raw.len());
        let mut subset = Vec::with_capacity(self.config.size);
        for round in 1..=self.max_rounds {
            sampler.draw_into(self.config.size, stream, &mut subset)?;
            let u = stream.unit() * self.wrs.acceptance_scale;
            let stake: u64 = subset.iter().map(|&i| raw[i]).sum();
            if stake < self.threshold {
                continue;
            }
            let mass: f64 = subset.iter().map(|&i| self.wrs.p[i]).sum();
            if u < mass {
                let seats = subset.iter().map(|&i| (i, self.wrs.p[i])).collect();
                return Ok(SelectionOutcome::from_raw(seats, round));
            }
        }
        Err(Error::RejectionBudgetExhausted {
            rounds: self.max_rounds,
        })
    }

    fn report(&self) -> DecentralizationReport {
        DecentralizationReport::new(
            Algorithm::Wrs,
            self.lambda_bound(),
            LambdaKind::LowerBound,
            ReportDetails::Wrs {
                size: self.config.size,
                alpha: self.config.alpha,
                threshold: self.threshold,
                total_weight: self.stakes.total(),
                acceptance_scale: self.wrs.acceptance_scale,
                smallest_others: smallest_others(&self.wrs.p, self.config.size),
            },
        )
    }
}
