//! Representative electoral college.
//!
//! Participants sorted by weight are cut into `M` groups of nearly equal
//! size. Each group elects one representative with probability proportional
//! to in-group weight, and the representative carries the whole group's
//! weight as voting power.

use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, Sortition};
use crate::error::{Error, Result};
use crate::metrics::{DecentralizationReport, LambdaKind, ReportDetails};
use crate::outcome::SelectionOutcome;
use crate::rng::PrngStream;
use crate::weights::WeightVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecPartition {
    /// Participant indices per group, lightest group first; within a group
    /// in `(weight, index)` order.
    pub groups: Vec<Vec<usize>>,
    pub group_powers: Vec<f64>,
}

impl RecPartition {
    pub fn new(weights: &WeightVector, size: usize) -> Result<Self> {
        let n = weights.len();
        if size == 0 {
            return Err(Error::EmptyCommittee);
        }
        if size > n {
            return Err(Error::SizeExceedsPopulation { size, population: n });
        }
        let order = weights.ascending_order();
        let mut groups = Vec::with_capacity(size);
        let mut start = 0;
        for len in group_sizes(n, size) {
            groups.push(order[start..start + len].to_vec());
            start += len;
        }
        let group_powers = groups.iter().map(|g| weights.coalition(g)).collect();
        Ok(Self { groups, group_powers })
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// `min_m (min_{i ∈ G_m} w_i) / p_m`.
    pub fn lambda(&self, weights: &WeightVector) -> f64 {
        self.groups
            .iter()
            .zip(&self.group_powers)
            .map(|(g, p)| weights.get(g[0]) / p)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `N_m = ⌊N/M⌋ + 1(N mod M ≥ m)` for `m = 1..=M`.
pub fn group_sizes(population: usize, size: usize) -> Vec<usize> {
    let base = population / size;
    let extra = population % size;
    (1..=size).map(|m| base + usize::from(extra >= m)).collect()
}

#[derive(Clone, Debug)]
pub struct ElectoralCollege {
    weights: WeightVector,
    partition: RecPartition,
}

impl ElectoralCollege {
    pub fn new(weights: WeightVector, size: usize) -> Result<Self> {
        let partition = RecPartition::new(&weights, size)?;
        Ok(Self { weights, partition })
    }

    pub fn partition(&self) -> &RecPartition {
        &self.partition
    }

    pub fn lambda(&self) -> f64 {
        self.partition.lambda(&self.weights)
    }
}

impl Sortition for ElectoralCollege {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Rec
    }

    fn weights(&self) -> &WeightVector {
        &self.weights
    }

    fn committee_size(&self) -> usize {
        self.partition.groups.len()
    }

    fn select(&self, stream: &mut PrngStream) -> Result<SelectionOutcome> {
        let seats = self
            .partition
            .groups
            .iter()
            .zip(&self.partition.group_powers)
            .map(|(group, &power)| {
                let target = stream.unit() * power;
                let mut acc = 0.0;
                let chosen = group
                    .iter()
                    .copied()
                    .find(|&j| {
                        acc += self.weights.get(j);
                        target < acc
                    })
                    .unwrap_or(group[group.len() - 1]);
                (chosen, power)
            })
            .collect();
        Ok(SelectionOutcome::from_raw(seats, 1))
    }

    fn report(&self) -> DecentralizationReport {
        let lambda = self.lambda();
        let extremal_group = self
            .partition
            .groups
            .iter()
            .zip(&self.partition.group_powers)
            .map(|(g, p)| self.weights.get(g[0]) / p)
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map_or(0, |(m, _)| m);
        DecentralizationReport::new(
            Algorithm::Rec,
            lambda,
            LambdaKind::Exact,
            ReportDetails::Rec {
                size: self.partition.groups.len(),
                group_sizes: self.partition.group_sizes(),
                group_powers: self.partition.group_powers.clone(),
                extremal_group,
            },
        )
    }
}
