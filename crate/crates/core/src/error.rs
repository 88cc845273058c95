use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a weight vector is outside the admissible region of cumulative
/// rejection sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum CrsViolation {
    /// The calibration needs `N > M > 2`.
    Population {
        population: usize,
        size: usize,
    },
    BelowLowerBound {
        index: usize,
        weight: f64,
        bound: f64,
    },
    AboveUpperBound {
        index: usize,
        weight: f64,
        bound: f64,
    },
}

impl fmt::Display for CrsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrsViolation::Population { population, size } => {
                write!(f, "requires N > M > 2, got N = {population}, M = {size}")
            }
            CrsViolation::BelowLowerBound { index, weight, bound } => write!(
                f,
                "weight {weight} of participant {index} is below the lower bound (M-1)/(M(N-1)) = {bound}"
            ),
            CrsViolation::AboveUpperBound { index, weight, bound } => write!(
                f,
                "weight {weight} of participant {index} is above the upper bound (N-2M+M^2)/(M^2(N-1)) = {bound}"
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight vector is empty")]
    EmptyInput,

    #[error("weight of participant {index} must be positive and finite, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("committee size {size} exceeds population {population}")]
    SizeExceedsPopulation { size: usize, population: usize },

    #[error("committee size must be at least 1")]
    EmptyCommittee,

    #[error("weight {weight} of participant {index} is not below 1/M = {limit}")]
    WeightTooLarge { index: usize, weight: f64, limit: f64 },

    #[error("infeasible weights for cumulative rejection sampling: {0}")]
    InfeasibleWeights(CrsViolation),

    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),

    #[error("no committee containing participant {index} reaches the weight threshold {threshold}")]
    InfeasibleAlpha { index: usize, threshold: u64 },

    #[error("weighted rejection sampling requires N > M, got N = {population}, M = {size}")]
    PopulationTooSmall { population: usize, size: usize },

    #[error("all {rounds} rejection rounds rejected their candidate committee")]
    RejectionBudgetExhausted { rounds: u64 },

    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLargeForEnumeration(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("adversary obtained voting power {power} > 1/2 in sample {sample}")]
    HonestMajorityViolated { sample: u64, power: f64 },

    #[error("subset counts for N = {population}, M = {size} exceed the 192-bit count range")]
    CountOverflow { population: usize, size: usize },

    #[error("weighted rejection sampling needs integer weights")]
    IntegerWeightsRequired,

    #[error("malformed weight file: {0}")]
    Format(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that mean "this configuration cannot be run" as
    /// opposed to malformed input or I/O trouble.
    pub fn is_feasibility(&self) -> bool {
        matches!(
            self,
            Error::WeightTooLarge { .. }
                | Error::InfeasibleWeights(_)
                | Error::InfeasibleAlpha { .. }
                | Error::PopulationTooSmall { .. }
                | Error::SizeExceedsPopulation { .. }
        )
    }
}
