//! Decentralization reports, feasibility envelopes, and the two verifiers:
//! Monte Carlo fairness and the deterministic honest-majority guarantee.
//!
//! An algorithm is λ-decentralized when no member's voting power ever
//! exceeds `1/λ` times its weight. A coalition holding at most `λ/2` of the
//! stake can then never hold more than half the committee's power.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, Sortition};
use crate::crs::crs_feasible;
use crate::error::{Error, Result};
use crate::rng::PrngStream;
use crate::weights::WeightVector;

/// Relative slack for comparing realized power ratios against `1/λ`.
pub const RATIO_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaKind {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportDetails {
    Stitch {
        size: usize,
        min_weight: f64,
        max_weight: f64,
        weight_limit: f64,
    },
    Crs {
        size: usize,
        lower_bound: f64,
        upper_bound: f64,
        acceptance_scale: f64,
    },
    Wrs {
        size: usize,
        alpha: f64,
        threshold: u64,
        total_weight: u64,
        acceptance_scale: f64,
        smallest_others: Vec<f64>,
    },
    Rec {
        size: usize,
        group_sizes: Vec<usize>,
        group_powers: Vec<f64>,
        extremal_group: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecentralizationReport {
    pub algorithm: Algorithm,
    pub lambda: f64,
    pub lambda_kind: LambdaKind,
    pub feasible: bool,
    /// Largest adversarial stake share that provably cannot win a majority.
    pub adversary_tolerance: f64,
    pub details: ReportDetails,
}

impl DecentralizationReport {
    pub fn new(algorithm: Algorithm, lambda: f64, lambda_kind: LambdaKind, details: ReportDetails) -> Self {
        Self {
            algorithm,
            lambda,
            lambda_kind,
            feasible: true,
            adversary_tolerance: lambda / 2.0,
            details,
        }
    }
}

/// Largest committee size an algorithm admits for these weights.
///
/// Stitch needs `max w < 1/M` strictly. CRS needs `N > M > 2` and every
/// weight inside its calibration interval; when no such `M` exists the
/// answer is 1. WRS and REC impose no limit and report `N`.
pub fn m_max(algorithm: Algorithm, weights: &WeightVector) -> usize {
    let n = weights.len();
    match algorithm {
        Algorithm::Stitch => {
            let max_w = weights.max();
            let mut m = ((1.0 / max_w).floor() as usize).min(n) + 1;
            while m > 0 && max_w >= 1.0 / m as f64 {
                m -= 1;
            }
            m
        }
        Algorithm::Crs => (3..n).rev().find(|&m| crs_feasible(weights, m).is_ok()).unwrap_or(1),
        Algorithm::Wrs | Algorithm::Rec => n,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticipantFairness {
    pub index: usize,
    pub weight: f64,
    pub mean_power: f64,
    pub std_error: f64,
    /// `|mean - weight| / std_error`.
    pub deviation_sigma: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FairnessTestResult {
    pub algorithm: Algorithm,
    pub trials: u64,
    pub participants: Vec<ParticipantFairness>,
    pub max_sigma_deviation: f64,
}

impl FairnessTestResult {
    /// Passes when every coordinate is within `sigmas` standard errors.
    /// With `N` coordinates a 5σ per-coordinate threshold keeps the
    /// family-wise false alarm rate below `N · 6e-7`.
    pub fn passes(&self, sigmas: f64) -> bool {
        self.max_sigma_deviation <= sigmas
    }
}

/// Trials per independent sub-stream. Fixed so results do not depend on the
/// thread count.
const TRIALS_PER_LANE: u64 = 4096;

#[derive(Clone)]
struct Moments {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl Moments {
    fn new(n: usize) -> Self {
        Self {
            sum: vec![0.0; n],
            sum_sq: vec![0.0; n],
        }
    }
}

/// Runs `trials` independent selections and compares each participant's
/// mean voting power to its weight.
pub fn empirical_fairness<S: Sortition + Sync>(algorithm: &S, trials: u64, seed: u64) -> Result<FairnessTestResult> {
    if trials < 2 {
        return Err(Error::PreconditionViolated("need at least 2 trials".into()));
    }
    let weights = algorithm.weights();
    let n = weights.len();
    let lanes = trials.div_ceil(TRIALS_PER_LANE);
    let partials: Vec<Moments> = (0..lanes)
        .into_par_iter()
        .map(|lane| {
            let mut stream = PrngStream::with_lane(seed, lane);
            let mut acc = Moments::new(n);
            let count = TRIALS_PER_LANE.min(trials - lane * TRIALS_PER_LANE);
            for _ in 0..count {
                let outcome = algorithm.select(&mut stream)?;
                for seat in &outcome.seats {
                    acc.sum[seat.index] += seat.voting_power;
                    acc.sum_sq[seat.index] += seat.voting_power * seat.voting_power;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut total = Moments::new(n);
    for part in &partials {
        for i in 0..n {
            total.sum[i] += part.sum[i];
            total.sum_sq[i] += part.sum_sq[i];
        }
    }

    let t = trials as f64;
    let participants: Vec<ParticipantFairness> = (0..n)
        .map(|i| {
            let mean = total.sum[i] / t;
            let var = ((total.sum_sq[i] - t * mean * mean) / (t - 1.0)).max(0.0);
            let std_error = (var / t).sqrt();
            let gap = (mean - weights.get(i)).abs();
            let deviation_sigma = if std_error > 0.0 {
                gap / std_error
            } else if gap < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            ParticipantFairness {
                index: i,
                weight: weights.get(i),
                mean_power: mean,
                std_error,
                deviation_sigma,
            }
        })
        .collect();
    let max_sigma_deviation = participants.iter().map(|p| p.deviation_sigma).fold(0.0, f64::max);
    Ok(FairnessTestResult {
        algorithm: algorithm.algorithm(),
        trials,
        participants,
        max_sigma_deviation,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HonestMajorityVerdict {
    pub adversary_weight: f64,
    pub adversary_tolerance: f64,
    pub samples: u64,
    pub max_adversarial_power: f64,
}

/// Samples committees and confirms the adversary never exceeds half the
/// voting power. Refuses adversaries heavier than `λ/2`, where the
/// guarantee says nothing; a single violation is an error.
pub fn honest_majority_check<S: Sortition + ?Sized>(
    algorithm: &S,
    adversary: &[usize],
    samples: u64,
    seed: u64,
) -> Result<HonestMajorityVerdict> {
    let weights = algorithm.weights();
    if let Some(&bad) = adversary.iter().find(|&&i| i >= weights.len()) {
        return Err(Error::PreconditionViolated(format!(
            "adversary index {bad} out of range"
        )));
    }
    let tolerance = algorithm.report().adversary_tolerance;
    let adversary_weight = weights.coalition(adversary);
    if adversary_weight > tolerance * (1.0 + RATIO_TOLERANCE) {
        return Err(Error::PreconditionViolated(format!(
            "adversary weight {adversary_weight} exceeds λ/2 = {tolerance}"
        )));
    }
    let mut stream = PrngStream::new(seed);
    let mut max_power = 0.0f64;
    for sample in 0..samples {
        let outcome = algorithm.select(&mut stream)?;
        let power = outcome.coalition_power(adversary);
        if power > 0.5 + RATIO_TOLERANCE {
            return Err(Error::HonestMajorityViolated { sample, power });
        }
        max_power = max_power.max(power);
    }
    Ok(HonestMajorityVerdict {
        adversary_weight,
        adversary_tolerance: tolerance,
        samples,
        max_adversarial_power: max_power,
    })
}

/// Greedily adds participants in `order` while the coalition stays within
/// `budget`.
pub fn coalition_within(weights: &WeightVector, order: impl IntoIterator<Item = usize>, budget: f64) -> Vec<usize> {
    let mut total = 0.0;
    let mut members = Vec::new();
    for i in order {
        let w = weights.get(i);
        if total + w <= budget {
            total += w;
            members.push(i);
        }
    }
    members
}
