//! Zipf-distributed stake profiles: `w_i ∝ 1 / i^s`.

use serde::{Deserialize, Serialize};

use crate::weights::{IntegerWeightVector, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZipfMode {
    Continuous,
    Integer,
}

/// Normalized `1/i^s` for `i = 1..=n`.
pub fn zipf_weights(n: usize, s: f64) -> WeightVector {
    assert!(n >= 1 && s >= 0.0, "need n >= 1 and s >= 0");
    let raw: Vec<f64> = (1..=n).map(|i| (i as f64).powf(-s)).collect();
    WeightVector::new(&raw).expect("zipf weights are positive")
}

/// Integer stakes `round(n^s / i^s)`, ties to even, never below 1.
pub fn zipf_integer_weights(n: usize, s: f64) -> IntegerWeightVector {
    assert!(n >= 1 && s >= 0.0, "need n >= 1 and s >= 0");
    let top = (n as f64).powf(s);
    let raw = (1..=n)
        .map(|i| ((top / (i as f64).powf(s)).round_ties_even() as u64).max(1))
        .collect();
    IntegerWeightVector::new(raw).expect("zipf stakes are positive")
}
