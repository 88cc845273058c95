//! Systematic ("stitch") sortition.
//!
//! Participants are laid out on `[0, 1)` as consecutive half-open intervals
//! of length `w_n`. One uniform `x` defines `M` evenly spaced points
//! `{x + i/M}`; the members are the owners of the intervals the points land
//! in. With every `w_n < 1/M` no interval can hold two points, so the
//! committee always has exactly `M` distinct members, each with power `1/M`.

use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, Sortition};
use crate::error::{Error, Result};
use crate::metrics::{DecentralizationReport, LambdaKind, ReportDetails};
use crate::outcome::SelectionOutcome;
use crate::rng::PrngStream;
use crate::weights::WeightVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StitchConfig {
    pub size: usize,
    /// Shuffle the interval layout before each draw.
    pub permute_first: bool,
}

impl StitchConfig {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            permute_first: false,
        }
    }
}

/// Checks `max_n w_n < 1/M`.
pub fn check_stitch_weights(weights: &WeightVector, size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::EmptyCommittee);
    }
    if size > weights.len() {
        return Err(Error::SizeExceedsPopulation {
            size,
            population: weights.len(),
        });
    }
    let limit = 1.0 / size as f64;
    match weights.as_slice().iter().position(|&w| w >= limit) {
        Some(index) => Err(Error::WeightTooLarge {
            index,
            weight: weights.get(index),
            limit,
        }),
        None => Ok(()),
    }
}

/// Right-closed cumulative boundaries `b_0 = 0, ..., b_N = 1` for the given
/// layout order. The last boundary is pinned to 1 to absorb rounding.
fn boundaries(weights: &WeightVector, order: Option<&[usize]>) -> Vec<f64> {
    let n = weights.len();
    let mut bounds = Vec::with_capacity(n + 1);
    bounds.push(0.0);
    let mut acc = 0.0;
    for k in 0..n {
        let idx = order.map_or(k, |o| o[k]);
        acc += weights.get(idx);
        bounds.push(acc);
    }
    bounds[n] = 1.0;
    bounds
}

/// Slot whose interval `[b_k, b_{k+1})` contains `point`.
fn locate(bounds: &[f64], point: f64) -> usize {
    let slot = bounds.partition_point(|&b| b <= point) - 1;
    slot.min(bounds.len() - 2)
}

#[derive(Clone, Debug)]
pub struct Stitch {
    weights: WeightVector,
    config: StitchConfig,
    bounds: Vec<f64>,
}

impl Stitch {
    pub fn new(weights: WeightVector, config: StitchConfig) -> Result<Self> {
        check_stitch_weights(&weights, config.size)?;
        let bounds = boundaries(&weights, None);
        Ok(Self {
            weights,
            config,
            bounds,
        })
    }

    pub fn config(&self) -> StitchConfig {
        self.config
    }

    /// Committee for a given start point `x` in `[0, 1)` on the unpermuted
    /// layout.
    pub fn committee_at(&self, x: f64) -> Result<SelectionOutcome> {
        self.committee_on(&self.bounds, None, x)
    }

    fn committee_on(&self, bounds: &[f64], order: Option<&[usize]>, x: f64) -> Result<SelectionOutcome> {
        let m = self.config.size;
        let mut members = Vec::with_capacity(m);
        for i in 0..m {
            let mut point = x + i as f64 / m as f64;
            if point >= 1.0 {
                point -= 1.0;
            }
            let slot = locate(bounds, point);
            members.push(order.map_or(slot, |o| o[slot]));
        }
        members.sort_unstable();
        if members.windows(2).any(|p| p[0] == p[1]) {
            // Only reachable when some w_n is within rounding of 1/M.
            return Err(Error::PreconditionViolated(format!(
                "stitch points collided at x = {x}; a weight is numerically indistinguishable from 1/M"
            )));
        }
        Ok(SelectionOutcome::equal_seats(members, 1))
    }

    /// `λ = M · min_n w_n`.
    pub fn lambda(&self) -> f64 {
        self.config.size as f64 * self.weights.min()
    }
}

impl Sortition for Stitch {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Stitch
    }

    fn weights(&self) -> &WeightVector {
        &self.weights
    }

    fn committee_size(&self) -> usize {
        self.config.size
    }

    fn select(&self, stream: &mut PrngStream) -> Result<SelectionOutcome> {
        if self.config.permute_first {
            let mut order: Vec<usize> = (0..self.weights.len()).collect();
            stream.shuffle(&mut order);
            let bounds = boundaries(&self.weights, Some(&order));
            let x = stream.unit();
            self.committee_on(&bounds, Some(&order), x)
        } else {
            let x = stream.unit();
            self.committee_at(x)
        }
    }

    fn report(&self) -> DecentralizationReport {
        let m = self.config.size;
        DecentralizationReport::new(
            Algorithm::Stitch,
            self.lambda(),
            LambdaKind::Exact,
            ReportDetails::Stitch {
                size: m,
                min_weight: self.weights.min(),
                max_weight: self.weights.max(),
                weight_limit: 1.0 / m as f64,
            },
        )
    }
}

/// Exact expected voting power of every participant under a uniform start
/// point, by integrating over the segments of `[0, 1/M)` on which the
/// committee is constant.
pub fn stitch_exact_expected_power(weights: &WeightVector, size: usize) -> Result<Vec<f64>> {
    let stitch = Stitch::new(weights.clone(), StitchConfig::new(size))?;
    let spacing = 1.0 / size as f64;
    let mut cuts: Vec<f64> = stitch
        .bounds
        .iter()
        .map(|&b| (b * size as f64).fract() * spacing)
        .collect();
    cuts.push(0.0);
    cuts.push(spacing);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut expected = vec![0.0; weights.len()];
    for seg in cuts.windows(2) {
        let length = seg[1] - seg[0];
        if length <= 0.0 {
            continue;
        }
        let committee = stitch.committee_at(0.5 * (seg[0] + seg[1]))?;
        // P(segment) = length · M, each member holds 1/M.
        for seat in &committee.seats {
            expected[seat.index] += length;
        }
    }
    Ok(expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[f64]) -> WeightVector {
        WeightVector::new(raw).unwrap()
    }

    #[test]
    fn worked_example() {
        let s = Stitch::new(w(&[0.25, 0.30, 0.45]), StitchConfig::new(2)).unwrap();
        let c = s.committee_at(0.1).unwrap();
        assert_eq!(c.members(), vec![0, 2]);
        assert!(c.seats.iter().all(|s| s.voting_power == 0.5));
    }

    #[test]
    fn half_weights_rejected() {
        assert!(matches!(
            Stitch::new(w(&[0.5, 0.5]), StitchConfig::new(2)),
            Err(Error::WeightTooLarge { index: 0, .. })
        ));
    }

    #[test]
    fn boundary_point_belongs_to_right_interval() {
        let s = Stitch::new(w(&[0.25, 0.30, 0.45]), StitchConfig::new(2)).unwrap();
        // points 0.25 and 0.75
        assert_eq!(s.committee_at(0.25).unwrap().members(), vec![1, 2]);
        // points 0.0 and 0.5
        assert_eq!(s.committee_at(0.0).unwrap().members(), vec![0, 1]);
    }

    #[test]
    fn exact_expectation_matches_example() {
        let e = stitch_exact_expected_power(&w(&[0.25, 0.30, 0.45]), 2).unwrap();
        for (a, b) in e.iter().zip([0.25, 0.30, 0.45]) {
            assert!((a - b).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn uniform_committees_are_distinct() {
        let s = Stitch::new(
            w(&[1.0; 10]),
            StitchConfig {
                size: 7,
                permute_first: true,
            },
        )
        .unwrap();
        let mut stream = PrngStream::new(4);
        for _ in 0..1000 {
            let c = s.select(&mut stream).unwrap();
            assert_eq!(c.size(), 7);
            assert!(c.seats.iter().all(|s| (s.voting_power - 1.0 / 7.0).abs() < 1e-15));
        }
    }

    #[test]
    fn permutation_consumes_draws_before_x() {
        let s = Stitch::new(
            w(&[1.0, 2.0, 3.0, 4.0]),
            StitchConfig {
                size: 2,
                permute_first: true,
            },
        )
        .unwrap();
        let mut a = PrngStream::new(11);
        let mut b = PrngStream::new(11);
        let ca = s.select(&mut a).unwrap();
        assert_eq!(ca, s.select(&mut b).unwrap());
        assert!(a.counter() > 1);
    }
}
