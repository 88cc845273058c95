use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::crs::CumulativeRejection;
use crate::error::{Error, Result};
use crate::metrics::DecentralizationReport;
use crate::outcome::SelectionOutcome;
use crate::rec::ElectoralCollege;
use crate::rng::PrngStream;
use crate::stitch::{Stitch, StitchConfig};
use crate::weights::{Stakes, WeightVector};
use crate::wrs::{WeightedRejection, WrsConfig};

/// Default cap on rejection rounds for CRS and WRS.
pub const DEFAULT_MAX_ROUNDS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Stitch,
    Crs,
    Wrs,
    Rec,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Stitch, Algorithm::Crs, Algorithm::Wrs, Algorithm::Rec];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Stitch => "stitch",
            Algorithm::Crs => "crs",
            Algorithm::Wrs => "wrs",
            Algorithm::Rec => "rec",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "stitch" => Ok(Algorithm::Stitch),
            "crs" => Ok(Algorithm::Crs),
            "wrs" => Ok(Algorithm::Wrs),
            "rec" => Ok(Algorithm::Rec),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// A prepared committee-selection procedure: weights validated and any
/// derived sampling weights computed once up front.
pub trait Sortition {
    fn algorithm(&self) -> Algorithm;

    /// Normalized input weights.
    fn weights(&self) -> &WeightVector;

    fn committee_size(&self) -> usize;

    /// Draws one committee. Identical stream state gives an identical outcome.
    fn select(&self, stream: &mut PrngStream) -> Result<SelectionOutcome>;

    /// Decentralization guarantee for this configuration.
    fn report(&self) -> DecentralizationReport;
}

/// Parameters shared by all four algorithms; fields an algorithm does not
/// use are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionParams {
    pub algorithm: Algorithm,
    pub size: usize,
    pub alpha: Option<f64>,
    pub permute: bool,
    pub max_rounds: u64,
}

impl SelectionParams {
    pub fn new(algorithm: Algorithm, size: usize) -> Self {
        Self {
            algorithm,
            size,
            alpha: None,
            permute: false,
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }
}

/// Static dispatch over the four algorithms.
#[derive(Clone, Debug)]
pub enum AnySortition {
    Stitch(Stitch),
    Crs(CumulativeRejection),
    Wrs(WeightedRejection),
    Rec(ElectoralCollege),
}

impl AnySortition {
    pub fn build(stakes: &Stakes, params: &SelectionParams) -> Result<Self> {
        Ok(match params.algorithm {
            Algorithm::Stitch => AnySortition::Stitch(Stitch::new(
                stakes.normalized(),
                StitchConfig {
                    size: params.size,
                    permute_first: params.permute,
                },
            )?),
            Algorithm::Crs => AnySortition::Crs(
                CumulativeRejection::new(stakes.normalized(), params.size)?.with_max_rounds(params.max_rounds),
            ),
            Algorithm::Wrs => {
                let Stakes::Integer(iw) = stakes else {
                    return Err(Error::IntegerWeightsRequired);
                };
                let alpha = params
                    .alpha
                    .ok_or_else(|| Error::PreconditionViolated("weighted rejection sampling needs alpha".into()))?;
                AnySortition::Wrs(
                    WeightedRejection::new(iw.clone(), WrsConfig::new(params.size, alpha)?)?
                        .with_max_rounds(params.max_rounds),
                )
            }
            Algorithm::Rec => AnySortition::Rec(ElectoralCollege::new(stakes.normalized(), params.size)?),
        })
    }

    fn inner(&self) -> &dyn Sortition {
        match self {
            AnySortition::Stitch(a) => a,
            AnySortition::Crs(a) => a,
            AnySortition::Wrs(a) => a,
            AnySortition::Rec(a) => a,
        }
    }
}

impl Sortition for AnySortition {
    fn algorithm(&self) -> Algorithm {
        self.inner().algorithm()
    }

    fn weights(&self) -> &WeightVector {
        self.inner().weights()
    }

    fn committee_size(&self) -> usize {
        self.inner().committee_size()
    }

    fn select(&self, stream: &mut PrngStream) -> Result<SelectionOutcome> {
        self.inner().select(stream)
    }

    fn report(&self) -> DecentralizationReport {
        self.inner().report()
    }
}

/// Decentralization report for `(algorithm, weights, M, params)`.
pub fn lambda_for(stakes: &Stakes, params: &SelectionParams) -> Result<DecentralizationReport> {
    Ok(AnySortition::build(stakes, params)?.report())
}
