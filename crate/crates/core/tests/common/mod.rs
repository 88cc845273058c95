#![allow(dead_code)]

use sortition::crs::crs_weight_bounds;
use sortition::metrics::coalition_within;
use sortition::wrs::{check_strong_feasibility, WrsConfig};
use sortition::{m_max, Algorithm, IntegerWeightVector, PrngStream, WeightVector};

pub fn uniform_in(s: &mut PrngStream, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * s.unit()
}

pub fn int_in(s: &mut PrngStream, lo: usize, hi: usize) -> usize {
    lo + s.below((hi - lo + 1) as u64) as usize
}

/// Raw weights spanning roughly two orders of magnitude.
pub fn random_weights(s: &mut PrngStream, n: usize) -> WeightVector {
    let raw: Vec<f64> = (0..n).map(|_| 10f64.powf(uniform_in(s, -1.0, 1.0))).collect();
    WeightVector::new(&raw).unwrap()
}

pub fn stitch_instance(s: &mut PrngStream, max_n: usize) -> (WeightVector, usize) {
    let n = int_in(s, 2, max_n);
    let w = random_weights(s, n);
    let top = m_max(Algorithm::Stitch, &w);
    let m = int_in(s, 1, top);
    (w, m)
}

/// Weights scattered around `1/N` inside the feasible interval.
pub fn crs_instance(s: &mut PrngStream, max_n: usize) -> (WeightVector, usize) {
    let n = int_in(s, 4, max_n);
    let m = int_in(s, 3, n - 1);
    let (lo, hi) = crs_weight_bounds(n, m);
    let centre = 1.0 / n as f64;
    let spread = 0.9 * (centre - lo).min(hi - centre);
    let eps: Vec<f64> = (0..n).map(|_| uniform_in(s, -spread / 2.0, spread / 2.0)).collect();
    let mean = eps.iter().sum::<f64>() / n as f64;
    let raw: Vec<f64> = eps.iter().map(|e| centre + e - mean).collect();
    (WeightVector::new(&raw).unwrap(), m)
}

pub fn rec_instance(s: &mut PrngStream, max_n: usize) -> (WeightVector, usize) {
    let n = int_in(s, 1, max_n);
    let w = random_weights(s, n);
    let m = int_in(s, 1, n);
    (w, m)
}

/// Strongly feasible integer instance with `M < N`.
pub fn wrs_instance(
    s: &mut PrngStream,
    max_n: usize,
    max_m: usize,
    max_weight: u64,
) -> (IntegerWeightVector, WrsConfig) {
    loop {
        let n = int_in(s, 2, max_n);
        let m = int_in(s, 1, max_m.min(n - 1));
        let raw: Vec<u64> = (0..n).map(|_| 1 + s.below(max_weight)).collect();
        let iw = IntegerWeightVector::new(raw).unwrap();
        let alpha = uniform_in(s, 0.01, 0.99);
        let cfg = WrsConfig::new(m, alpha).unwrap();
        if check_strong_feasibility(&iw, m, cfg.threshold(iw.total())).is_ok() {
            return (iw, cfg);
        }
    }
}

/// Heaviest-first, lightest-first and random coalitions within `budget`.
pub fn adversaries(w: &WeightVector, budget: f64, s: &mut PrngStream) -> [Vec<usize>; 3] {
    let mut asc = w.ascending_order();
    let lightest = coalition_within(w, asc.iter().copied(), budget);
    asc.reverse();
    let heaviest = coalition_within(w, asc.iter().copied(), budget);
    let mut shuffled: Vec<usize> = (0..w.len()).collect();
    s.shuffle(&mut shuffled);
    let random = coalition_within(w, shuffled, budget);
    [heaviest, lightest, random]
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
