//! Cumulative rejection sampling.
//!
//! Uniform `M`-subsets are accepted with probability proportional to the sum
//! of their acceptance weights `p_i`. The affine calibration
//! `p_i = M(N-1)/(N-M) w_i - (M-1)/(N-M)` makes every participant's
//! inclusion probability equal to `M w_i`, provided all `p_i` stay in
//! `[0, 1/M]`.

use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, Sortition, DEFAULT_MAX_ROUNDS};
use crate::error::{CrsViolation, Error, Result};
use crate::metrics::{DecentralizationReport, LambdaKind, ReportDetails};
use crate::outcome::SelectionOutcome;
use crate::rng::PrngStream;
use crate::subset::SubsetSampler;
use crate::weights::WeightVector;

/// Slack on the weight interval, absorbing normalization rounding.
const BOUND_SLACK: f64 = 1e-12;

/// Admissible weight interval `[(M-1)/(M(N-1)), (N-2M+M^2)/(M^2(N-1))]`.
pub fn crs_weight_bounds(population: usize, size: usize) -> (f64, f64) {
    let n = population as f64;
    let m = size as f64;
    let lower = (m - 1.0) / (m * (n - 1.0));
    let upper = (n - 2.0 * m + m * m) / (m * m * (n - 1.0));
    (lower, upper)
}

/// Single-entry calibration `p(w)` for population `N` and size `M`.
pub fn crs_acceptance_weight(weight: f64, population: usize, size: usize) -> f64 {
    let n = population as f64;
    let m = size as f64;
    m * (n - 1.0) / (n - m) * weight - (m - 1.0) / (n - m)
}

/// `Ok` iff `N > M > 2` and every weight lies in the admissible interval;
/// otherwise names the first violation.
pub fn crs_feasible(weights: &WeightVector, size: usize) -> std::result::Result<(), CrsViolation> {
    let population = weights.len();
    if !(population > size && size > 2) {
        return Err(CrsViolation::Population { population, size });
    }
    let (lower, upper) = crs_weight_bounds(population, size);
    for (index, &weight) in weights.as_slice().iter().enumerate() {
        if weight < lower - BOUND_SLACK {
            return Err(CrsViolation::BelowLowerBound {
                index,
                weight,
                bound: lower,
            });
        }
        if weight > upper + BOUND_SLACK {
            return Err(CrsViolation::AboveUpperBound {
                index,
                weight,
                bound: upper,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrsWeights {
    pub p: Vec<f64>,
    /// Largest possible `Σ p` over an `M`-subset; uniforms are drawn on
    /// `[0, acceptance_scale)`.
    pub acceptance_scale: f64,
}

impl CrsWeights {
    pub fn new(weights: &WeightVector, size: usize) -> Result<Self> {
        crs_feasible(weights, size).map_err(Error::InfeasibleWeights)?;
        let n = weights.len();
        let p: Vec<f64> = weights
            .as_slice()
            .iter()
            .map(|&w| crs_acceptance_weight(w, n, size).max(0.0))
            .collect();
        let acceptance_scale = top_sum(&p, size);
        Ok(Self { p, acceptance_scale })
    }
}

/// Sum of the `k` largest entries.
pub(crate) fn top_sum(values: &[f64], k: usize) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted.iter().take(k).sum()
}

#[derive(Clone, Debug)]
pub struct CumulativeRejection {
    weights: WeightVector,
    size: usize,
    crs: CrsWeights,
    max_rounds: u64,
}

impl CumulativeRejection {
    pub fn new(weights: WeightVector, size: usize) -> Result<Self> {
        let crs = CrsWeights::new(&weights, size)?;
        Ok(Self {
            weights,
            size,
            crs,
            max_rounds: DEFAULT_MAX_ROUNDS,
        })
    }

    pub fn with_max_rounds(mut self, max_rounds: u64) -> Self {
        self.max_rounds = max_rounds.max(1);
        self
    }

    pub fn crs_weights(&self) -> &CrsWeights {
        &self.crs
    }

    /// `λ = M · min_n w_n`: every member holds exactly `1/M`.
    pub fn lambda(&self) -> f64 {
        self.size as f64 * self.weights.min()
    }
}

impl Sortition for CumulativeRejection {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Crs
    }

    fn weights(&self) -> &WeightVector {
        &self.weights
    }

    fn committee_size(&self) -> usize {
        self.size
    }

    fn select(&self, stream: &mut PrngStream) -> Result<SelectionOutcome> {
        let mut sampler = SubsetSampler::new(self.weights.len());
        let mut subset = Vec::with_capacity(self.size);
        for round in 1..=self.max_rounds {
            sampler.draw_into(self.size, stream, &mut subset)?;
            let u = stream.unit() * self.crs.acceptance_scale;
            let mass: f64 = subset.iter().map(|&i| self.crs.p[i]).sum();
            if u < mass {
                return Ok(SelectionOutcome::equal_seats(subset, round));
            }
        }
        Err(Error::RejectionBudgetExhausted {
            rounds: self.max_rounds,
        })
    }

    fn report(&self) -> DecentralizationReport {
        let (lower, upper) = crs_weight_bounds(self.weights.len(), self.size);
        DecentralizationReport::new(
            Algorithm::Crs,
            self.lambda(),
            LambdaKind::Exact,
            ReportDetails::Crs {
                size: self.size,
                lower_bound: lower,
                upper_bound: upper,
                acceptance_scale: self.crs.acceptance_scale,
            },
        )
    }
}
