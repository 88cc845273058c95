//! Brute-force ground truth for small instances.
//!
//! Each function enumerates every committee an algorithm can produce,
//! together with its exact probability, without touching the fast paths in
//! the algorithm modules. These laws are what the fast paths are tested
//! against.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::weights::{IntegerWeightVector, WeightVector};
use crate::wrs::{Count, WrsConfig};

pub const MAX_ENUMERATION_POPULATION: usize = 15;
pub const MAX_PRODUCT_SUPPORT: usize = 1_000_000;
pub const MAX_STITCH_POPULATION: usize = 64;

/// Exact distribution over committees.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactLaw {
    /// `(sorted members, voting powers aligned with members, probability)`.
    pub support: Vec<(Vec<usize>, Vec<f64>, f64)>,
    pub expected_power: Vec<f64>,
}

impl ExactLaw {
    fn from_support(n: usize, support: Vec<(Vec<usize>, Vec<f64>, f64)>) -> Self {
        let mut expected_power = vec![0.0; n];
        for (members, powers, prob) in &support {
            for (&i, &g) in members.iter().zip(powers) {
                expected_power[i] += prob * g;
            }
        }
        Self {
            support,
            expected_power,
        }
    }

    pub fn total_probability(&self) -> f64 {
        self.support.iter().map(|(_, _, p)| p).sum()
    }

    /// Largest `g(n; M) / w_n` over every committee in the support.
    pub fn worst_ratio(&self, weights: &WeightVector) -> f64 {
        self.support
            .iter()
            .flat_map(|(members, powers, _)| members.iter().zip(powers).map(|(&i, g)| g / weights.get(i)))
            .fold(0.0, f64::max)
    }

    pub fn probability_of(&self, members: &[usize]) -> f64 {
        self.support
            .iter()
            .find(|(m, _, _)| m == members)
            .map_or(0.0, |(_, _, p)| *p)
    }
}

fn guard_population(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_POPULATION {
        return Err(Error::TooLargeForEnumeration(format!(
            "N = {n} > {MAX_ENUMERATION_POPULATION}"
        )));
    }
    Ok(())
}

/// Law of cumulative rejection sampling: `P(S) ∝ Σ_{j ∈ S} p_j` over all
/// `M`-subsets, every member holding `1/M`.
pub fn enumerate_crs_law(weights: &WeightVector, size: usize) -> Result<ExactLaw> {
    let n = weights.len();
    guard_population(n)?;
    if !(n > size && size > 2) {
        return Err(Error::PreconditionViolated(format!(
            "need N > M > 2, got N = {n}, M = {size}"
        )));
    }
    let (nf, mf) = (n as f64, size as f64);
    let p: Vec<f64> = weights
        .as_slice()
        .iter()
        .map(|&w| mf * (nf - 1.0) / (nf - mf) * w - (mf - 1.0) / (nf - mf))
        .collect();
    if let Some(index) = p.iter().position(|&x| x < -1e-12 || x > 1.0 / mf + 1e-12) {
        return Err(Error::PreconditionViolated(format!(
            "weight of participant {index} is outside the admissible interval"
        )));
    }
    let raw: Vec<(Vec<usize>, f64)> = (0..n)
        .combinations(size)
        .map(|s| {
            let mass = s.iter().map(|&i| p[i]).sum();
            (s, mass)
        })
        .collect();
    let z: f64 = raw.iter().map(|(_, m)| m).sum();
    let support = raw
        .into_iter()
        .map(|(s, mass)| (s, vec![1.0 / mf; size], mass / z))
        .collect();
    Ok(ExactLaw::from_support(n, support))
}

/// `D[v][k]` by listing every subset of size at most `size` with sum below
/// `limit`.
pub fn enumerate_subset_counts(weights: &IntegerWeightVector, size: usize, limit: u64) -> Result<Vec<Vec<u64>>> {
    let n = weights.len();
    guard_population(n)?;
    let mut table = vec![vec![0u64; size + 1]; limit as usize];
    for s in (0..n).powerset().filter(|s| s.len() <= size) {
        let sum: u64 = s.iter().map(|&i| weights.raw()[i]).sum();
        if sum < limit {
            table[sum as usize][s.len()] += 1;
        }
    }
    Ok(table)
}

/// `C_i`: the number of `size`-subsets containing `i` with sum at least
/// `threshold`.
pub fn enumerate_participant_counts(weights: &IntegerWeightVector, size: usize, threshold: u64) -> Result<Vec<u64>> {
    let n = weights.len();
    guard_population(n)?;
    let mut counts = vec![0u64; n];
    for s in (0..n).combinations(size) {
        let sum: u64 = s.iter().map(|&i| weights.raw()[i]).sum();
        if sum >= threshold {
            for &i in &s {
                counts[i] += 1;
            }
        }
    }
    Ok(counts)
}

/// `(members, member powers, probability)` per qualifying committee.
type RationalSupport = Vec<(Vec<usize>, Vec<BigRational>, BigRational)>;

/// Qualifying committees with their exact rational probabilities and
/// member powers.
fn wrs_rational_support(weights: &IntegerWeightVector, config: &WrsConfig) -> Result<RationalSupport> {
    let n = weights.len();
    let size = config.size;
    let threshold = config.threshold(weights.total());
    let counts = enumerate_participant_counts(weights, size, threshold)?;
    if let Some(index) = counts.iter().position(|&c| c == 0) {
        return Err(Error::InfeasibleAlpha { index, threshold });
    }
    // Unnormalized p_i = w_i / C_i; scaling cancels in both the law and the
    // member powers.
    let p: Vec<BigRational> = weights
        .raw()
        .iter()
        .zip(&counts)
        .map(|(&w, &c)| BigRational::new(BigInt::from(w), BigInt::from(c)))
        .collect();
    let mut raw = Vec::new();
    let mut z = BigRational::zero();
    for s in (0..n).combinations(size) {
        let sum: u64 = s.iter().map(|&i| weights.raw()[i]).sum();
        if sum < threshold {
            continue;
        }
        let mass: BigRational = s.iter().map(|&i| p[i].clone()).sum();
        z += &mass;
        let powers = s.iter().map(|&i| &p[i] / &mass).collect();
        raw.push((s, powers, mass));
    }
    Ok(raw.into_iter().map(|(s, g, mass)| (s, g, mass / &z)).collect())
}

/// Law of weighted rejection sampling: `P(S) ∝ 1(Σ w ≥ V) Σ_{j ∈ S} p_j`,
/// member `j` holding `p_j / Σ_{S} p`.
pub fn enumerate_wrs_law(weights: &IntegerWeightVector, config: &WrsConfig) -> Result<ExactLaw> {
    let to_f64 = |r: &BigRational| {
        use num_traits::ToPrimitive;
        r.to_f64().unwrap_or(f64::NAN)
    };
    let support = wrs_rational_support(weights, config)?
        .into_iter()
        .map(|(s, g, p)| (s, g.iter().map(to_f64).collect(), to_f64(&p)))
        .collect();
    Ok(ExactLaw::from_support(weights.len(), support))
}

/// Exact rational expected voting power under weighted rejection sampling.
pub fn wrs_expected_power_exact(weights: &IntegerWeightVector, config: &WrsConfig) -> Result<Vec<BigRational>> {
    let mut expected = vec![BigRational::zero(); weights.len()];
    for (s, g, p) in wrs_rational_support(weights, config)? {
        for (&i, gi) in s.iter().zip(&g) {
            expected[i] += &p * gi;
        }
    }
    Ok(expected)
}

/// Normalized integer weights as exact rationals.
pub fn rational_weights(weights: &IntegerWeightVector) -> Vec<BigRational> {
    let total = BigInt::from(weights.total());
    weights
        .raw()
        .iter()
        .map(|&w| BigRational::new(BigInt::from(w), total.clone()))
        .collect()
}

/// Law of the electoral college: independent proportional draws per
/// weight-sorted group.
pub fn enumerate_rec_law(weights: &WeightVector, size: usize) -> Result<ExactLaw> {
    let n = weights.len();
    if size == 0 || size > n {
        return Err(Error::SizeExceedsPopulation { size, population: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        weights
            .get(a)
            .partial_cmp(&weights.get(b))
            .expect("finite weights")
            .then(a.cmp(&b))
    });
    let mut groups: Vec<&[usize]> = Vec::with_capacity(size);
    let mut rest = &order[..];
    for m in 0..size {
        let len = n / size + usize::from(m < n % size);
        let (head, tail) = rest.split_at(len);
        groups.push(head);
        rest = tail;
    }
    let support_size = groups
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(g.len()))
        .filter(|&s| s <= MAX_PRODUCT_SUPPORT)
        .ok_or_else(|| Error::TooLargeForEnumeration("more than 10^6 committees".into()))?;

    let group_power: Vec<f64> = groups.iter().map(|g| g.iter().map(|&i| weights.get(i)).sum()).collect();
    let total_power: f64 = group_power.iter().sum();
    let mut support = Vec::with_capacity(support_size);
    for choice in groups.iter().map(|g| g.iter()).multi_cartesian_product() {
        let mut prob = 1.0;
        let mut seats: Vec<(usize, f64)> = Vec::with_capacity(size);
        for (m, &&j) in choice.iter().enumerate() {
            prob *= weights.get(j) / group_power[m];
            seats.push((j, group_power[m] / total_power));
        }
        seats.sort_by_key(|&(j, _)| j);
        let (members, powers) = seats.into_iter().unzip();
        support.push((members, powers, prob));
    }
    Ok(ExactLaw::from_support(n, support))
}

/// Law of the stitch over a uniform start point, one support entry per
/// segment of `[0, 1/M)` on which the committee is constant.
pub fn stitch_law_by_breakpoints(weights: &WeightVector, size: usize) -> Result<ExactLaw> {
    let n = weights.len();
    if n > MAX_STITCH_POPULATION {
        return Err(Error::TooLargeForEnumeration(format!(
            "N = {n} > {MAX_STITCH_POPULATION}"
        )));
    }
    let spacing = 1.0 / size as f64;
    if let Some(index) = weights.as_slice().iter().position(|&w| w >= spacing) {
        return Err(Error::WeightTooLarge {
            index,
            weight: weights.get(index),
            limit: spacing,
        });
    }
    let mut right = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &w in weights.as_slice() {
        acc += w;
        right.push(acc);
    }
    right[n - 1] = 1.0;
    let owner = |point: f64| right.iter().position(|&r| point < r).unwrap_or(n - 1);

    let mut cuts = vec![0.0, spacing];
    for &r in &right {
        cuts.push(r % spacing);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cuts.dedup();

    let mut support = Vec::new();
    for seg in cuts.windows(2) {
        let length = seg[1] - seg[0];
        if length <= 0.0 {
            continue;
        }
        let u = 0.5 * (seg[0] + seg[1]);
        let mut members: Vec<usize> = (0..size).map(|i| owner(u + i as f64 * spacing)).collect();
        members.sort_unstable();
        support.push((members, vec![spacing; size], length * size as f64));
    }
    Ok(ExactLaw::from_support(n, support))
}

/// `min_i w_i (1 + F_i / p_i)` in exact arithmetic from exact counts, with
/// `p_i ∝ w_i / C_i` and `F_i` the sum of the `size - 1` smallest other `p_j`.
pub fn wrs_lambda_bound_exact(weights: &IntegerWeightVector, counts: &[Count], size: usize) -> BigRational {
    let n = weights.len();
    assert!(counts.len() == n && size >= 1 && size <= n);
    let q: Vec<BigRational> = weights
        .raw()
        .iter()
        .zip(counts)
        .map(|(&w, c)| {
            let c = BigInt::from(BigUint::from_bytes_le(&c.to_le_bytes::<24>()));
            BigRational::new(BigInt::from(w), c)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| q[a].cmp(&q[b]).then(a.cmp(&b)));
    let k = size - 1;
    let lightest: Vec<usize> = order[..(k + 1).min(n)].to_vec();
    let total = BigRational::from_integer(BigInt::from(weights.total()));
    (0..n)
        .map(|i| {
            let f: BigRational = lightest.iter().filter(|&&j| j != i).take(k).map(|&j| &q[j]).sum();
            let w = BigRational::new(BigInt::from(weights.raw()[i]), BigInt::from(1));
            w / &total * (BigRational::from_integer(1.into()) + f / &q[i])
        })
        .min()
        .expect("nonempty")
}

/// Exact rational check helper: `true` iff two rational vectors agree.
pub fn rationals_equal(a: &[BigRational], b: &[BigRational]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}
