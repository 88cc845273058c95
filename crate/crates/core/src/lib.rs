//! Fair, decentralized committee selection for weighted participants.
//!
//! Four sortition algorithms share the [`Sortition`] trait:
//!
//! * [`Stitch`] lays weights on a circle and reads `M` evenly spaced points.
//! * [`CumulativeRejection`] samples uniform subsets with calibrated acceptance.
//! * [`WeightedRejection`] conditions on committees above a stake threshold.
//! * [`ElectoralCollege`] partitions by weight and elects one member per group.
//!
//! [`oracle`] holds exact enumerations used to verify them, [`metrics`] the
//! decentralization reports and verifiers, and [`experiments`] the Zipf sweeps.

pub mod algorithm;
pub mod crs;
pub mod error;
pub mod experiments;
pub mod metrics;
pub mod oracle;
pub mod outcome;
pub mod rec;
pub mod rng;
pub mod stitch;
pub mod subset;
pub mod weights;
pub mod wrs;
pub mod zipf;

pub use algorithm::{lambda_for, Algorithm, AnySortition, SelectionParams, Sortition, DEFAULT_MAX_ROUNDS};
pub use crs::CumulativeRejection;
pub use error::{Error, Result};
pub use metrics::{
    empirical_fairness, honest_majority_check, m_max, DecentralizationReport, FairnessTestResult, LambdaKind,
};
pub use outcome::{Seat, SelectionOutcome};
pub use rec::ElectoralCollege;
pub use rng::PrngStream;
pub use stitch::{Stitch, StitchConfig};
pub use weights::{IntegerWeightVector, Stakes, WeightTable, WeightVector};
pub use wrs::{WeightedRejection, WrsConfig};
pub use zipf::{zipf_integer_weights, zipf_weights};
