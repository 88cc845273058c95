//! Parameter sweeps over Zipf stake profiles, emitted as CSV.
//!
//! * [`sweep_m_max`]: largest admissible committee size versus `s`.
//! * [`sweep_lambda_vs_s`]: decentralization of all four algorithms versus `s`.
//! * [`sweep_lambda_vs_alpha`]: the WRS bound versus its threshold `α`.
//!
//! Infeasible grid points are kept as rows with `feasible = false` and an
//! empty value.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::{Algorithm, Sortition};
use crate::crs::CumulativeRejection;
use crate::error::{Error, Result};
use crate::metrics::{m_max, LambdaKind, RATIO_TOLERANCE};
use crate::rec::ElectoralCollege;
use crate::stitch::{Stitch, StitchConfig};
use crate::weights::IntegerWeightVector;
use crate::wrs::{check_strong_feasibility, threshold_for, wrs_lambda_bound, SubsetCountLayer, WrsWeights};
use crate::zipf::{zipf_integer_weights, zipf_weights};

/// `{0.0, 0.1, ..., 2.0}`.
pub fn default_s_grid() -> Vec<f64> {
    (0..=20).map(|k| k as f64 / 10.0).collect()
}

/// `{0.05, 0.10, ..., 0.95}`.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=19).map(|k| k as f64 / 20.0).collect()
}

/// Locale-independent rendering rounded to 12 significant digits.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("round trip");
    format!("{rounded}")
}

fn opt_number(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn write_csv<R: CsvRow>(rows: &[R], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MmaxRow {
    pub s: f64,
    pub algorithm: Algorithm,
    pub m_max: usize,
}

impl CsvRow for MmaxRow {
    const HEADER: &'static [&'static str] = &["s", "algorithm", "m_max"];

    fn fields(&self) -> Vec<String> {
        vec![
            format_number(self.s),
            self.algorithm.to_string(),
            self.m_max.to_string(),
        ]
    }
}

pub fn sweep_m_max(n: usize, s_grid: &[f64]) -> Vec<MmaxRow> {
    s_grid
        .par_iter()
        .map(|&s| {
            let w = zipf_weights(n, s);
            [Algorithm::Stitch, Algorithm::Crs].map(|algorithm| MmaxRow {
                s,
                algorithm,
                m_max: m_max(algorithm, &w),
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub s: f64,
    pub algorithm: Algorithm,
    pub lambda: Option<f64>,
    pub lambda_kind: LambdaKind,
    pub feasible: bool,
    /// The maximizing threshold, for WRS rows.
    pub alpha: Option<f64>,
}

impl CsvRow for LambdaRow {
    const HEADER: &'static [&'static str] = &["s", "algorithm", "lambda", "lambda_kind", "feasible", "alpha"];

    fn fields(&self) -> Vec<String> {
        vec![
            format_number(self.s),
            self.algorithm.to_string(),
            opt_number(self.lambda),
            match self.lambda_kind {
                LambdaKind::Exact => "exact".into(),
                LambdaKind::LowerBound => "lower_bound".into(),
            },
            self.feasible.to_string(),
            opt_number(self.alpha),
        ]
    }
}

/// WRS λ bound for each `α`; `None` where some participant belongs to no
/// qualifying committee. One count table, sized for the largest feasible
/// threshold, serves every `α`.
pub fn wrs_lambda_curve(stakes: &IntegerWeightVector, size: usize, alpha_grid: &[f64]) -> Result<Vec<Option<f64>>> {
    let thresholds: Vec<u64> = alpha_grid.iter().map(|&a| threshold_for(a, stakes.total())).collect();
    let mut feasible = Vec::with_capacity(thresholds.len());
    for (&alpha, &v) in alpha_grid.iter().zip(&thresholds) {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        feasible.push(match check_strong_feasibility(stakes, size, v) {
            Ok(()) => true,
            Err(Error::InfeasibleAlpha { .. }) => false,
            Err(e) => return Err(e),
        });
    }
    let Some(limit) = thresholds
        .iter()
        .zip(&feasible)
        .filter(|(_, &f)| f)
        .map(|(&v, _)| v)
        .max()
    else {
        return Ok(vec![None; alpha_grid.len()]);
    };
    let layer = SubsetCountLayer::build(stakes, size, limit)?;
    let normalized = stakes.normalized();
    thresholds
        .iter()
        .zip(&feasible)
        .map(|(&v, &ok)| {
            if !ok {
                return Ok(None);
            }
            let wrs = WrsWeights::from_layer(stakes, &layer, v)?;
            Ok(Some(wrs_lambda_bound(&normalized, &wrs, size)))
        })
        .collect()
}

fn best_of(alpha_grid: &[f64], curve: &[Option<f64>]) -> Option<(f64, f64)> {
    alpha_grid
        .iter()
        .zip(curve)
        .filter_map(|(&a, l)| l.map(|l| (a, l)))
        .fold(None, |best: Option<(f64, f64)>, (a, l)| match best {
            Some((_, bl)) if l <= bl * (1.0 + RATIO_TOLERANCE) => best,
            _ => Some((a, l)),
        })
}

pub fn sweep_lambda_vs_s(n: usize, size: usize, s_grid: &[f64], alpha_grid: &[f64]) -> Result<Vec<LambdaRow>> {
    let exact_rows: Vec<[LambdaRow; 3]> = s_grid
        .par_iter()
        .map(|&s| {
            let w = zipf_weights(n, s);
            let stitch = Stitch::new(w.clone(), StitchConfig::new(size)).ok().map(|a| a.lambda());
            let crs = CumulativeRejection::new(w.clone(), size).ok().map(|a| a.lambda());
            let rec = ElectoralCollege::new(w, size)?.lambda();
            let row = |algorithm, lambda: Option<f64>| LambdaRow {
                s,
                algorithm,
                lambda,
                lambda_kind: LambdaKind::Exact,
                feasible: lambda.is_some(),
                alpha: None,
            };
            Ok([
                row(Algorithm::Stitch, stitch),
                row(Algorithm::Crs, crs),
                row(Algorithm::Rec, Some(rec)),
            ])
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(4 * s_grid.len());
    // Count tables at large s reach hundreds of megabytes, so these run one
    // at a time.
    for (&s, exact) in s_grid.iter().zip(exact_rows) {
        rows.extend(exact);
        let curve = wrs_lambda_curve(&zipf_integer_weights(n, s), size, alpha_grid)?;
        let best = best_of(alpha_grid, &curve);
        rows.push(LambdaRow {
            s,
            algorithm: Algorithm::Wrs,
            lambda: best.map(|b| b.1),
            lambda_kind: LambdaKind::LowerBound,
            feasible: best.is_some(),
            alpha: best.map(|b| b.0),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub s: f64,
    pub alpha: f64,
    pub lambda: Option<f64>,
    pub feasible: bool,
    /// Marks the maximizing `α`; values within relative `1e-12` count as
    /// ties and the first one wins.
    pub best: bool,
}

impl CsvRow for AlphaRow {
    const HEADER: &'static [&'static str] = &["s", "alpha", "lambda", "feasible", "best"];

    fn fields(&self) -> Vec<String> {
        vec![
            format_number(self.s),
            format_number(self.alpha),
            opt_number(self.lambda),
            self.feasible.to_string(),
            self.best.to_string(),
        ]
    }
}

pub fn sweep_lambda_vs_alpha(n: usize, size: usize, s: f64, alpha_grid: &[f64]) -> Result<Vec<AlphaRow>> {
    let curve = wrs_lambda_curve(&zipf_integer_weights(n, s), size, alpha_grid)?;
    let best = best_of(alpha_grid, &curve).map(|b| b.0);
    Ok(alpha_grid
        .iter()
        .zip(curve)
        .map(|(&alpha, lambda)| AlphaRow {
            s,
            alpha,
            lambda,
            feasible: lambda.is_some(),
            best: best == Some(alpha),
        })
        .collect())
}

/// The algorithm object each λ-vs-s row describes, for callers that want
/// to check the reported value against sampled committees.
pub fn lambda_row_algorithm(n: usize, size: usize, row: &LambdaRow) -> Result<Box<dyn Sortition + Sync>> {
    let w = zipf_weights(n, row.s);
    Ok(match row.algorithm {
        Algorithm::Stitch => Box::new(Stitch::new(w, StitchConfig::new(size))?),
        Algorithm::Crs => Box::new(CumulativeRejection::new(w, size)?),
        Algorithm::Rec => Box::new(ElectoralCollege::new(w, size)?),
        Algorithm::Wrs => {
            let alpha = row
                .alpha
                .ok_or_else(|| Error::PreconditionViolated("infeasible WRS row".into()))?;
            let config = crate::wrs::WrsConfig::new(size, alpha)?;
            Box::new(crate::wrs::WeightedRejection::new(
                zipf_integer_weights(n, row.s),
                config,
            )?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let s = default_s_grid();
        assert_eq!(s.len(), 21);
        assert_eq!(s[7], 0.7);
        let a = default_alpha_grid();
        assert_eq!(a.len(), 19);
        assert_eq!(a[0], 0.05);
        assert_eq!(a[18], 0.95);
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.02), "0.02");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(20.0), "20");
    }

    #[test]
    fn small_alpha_matches_ungated_bound() {
        let stakes = zipf_integer_weights(30, 1.0);
        let curve = wrs_lambda_curve(&stakes, 4, &[0.01]).unwrap();
        // Nothing is rejected, so p ∝ w.
        let w = stakes.normalized();
        let ungated = crate::wrs::WrsWeights {
            counts: vec![],
            p: w.as_slice().to_vec(),
            acceptance_scale: 0.0,
        };
        let expect = wrs_lambda_bound(&w, &ungated, 4);
        assert!((curve[0].unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn unreachable_alpha_is_flagged() {
        let rows = sweep_lambda_vs_alpha(30, 4, 0.0, &[0.05, 0.5]).unwrap();
        assert!(rows[0].feasible);
        assert!(!rows[1].feasible && rows[1].lambda.is_none());
    }
}
