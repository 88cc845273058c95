use serde::{Deserialize, Serialize};

use crate::weights::WeightVector;

/// One committee member: its raw weight `g_n` and normalized voting power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Seat {
    pub index: usize,
    pub raw_weight: f64,
    pub voting_power: f64,
}

/// A realized committee. Seats are sorted by participant index; participants
/// without a seat have zero voting power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionOutcome {
    pub seats: Vec<Seat>,
    /// Candidate committees drawn before acceptance (1 for non-rejection
    /// algorithms).
    pub rounds: u64,
}

impl SelectionOutcome {
    /// Builds an outcome from `(index, raw weight)` pairs, normalizing raw
    /// weights into voting powers.
    pub fn from_raw(mut members: Vec<(usize, f64)>, rounds: u64) -> Self {
        members.sort_by_key(|&(i, _)| i);
        let total: f64 = members.iter().map(|&(_, g)| g).sum();
        let seats = members
            .into_iter()
            .map(|(index, raw_weight)| Seat {
                index,
                raw_weight,
                voting_power: raw_weight / total,
            })
            .collect();
        Self { seats, rounds }
    }

    /// Every member gets raw weight 1, i.e. power `1/M`.
    pub fn equal_seats(members: impl IntoIterator<Item = usize>, rounds: u64) -> Self {
        Self::from_raw(members.into_iter().map(|i| (i, 1.0)).collect(), rounds)
    }

    pub fn size(&self) -> usize {
        self.seats.len()
    }

    pub fn members(&self) -> Vec<usize> {
        self.seats.iter().map(|s| s.index).collect()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.seats.binary_search_by_key(&index, |s| s.index).is_ok()
    }

    pub fn voting_power(&self, index: usize) -> f64 {
        self.seats
            .binary_search_by_key(&index, |s| s.index)
            .map(|k| self.seats[k].voting_power)
            .unwrap_or(0.0)
    }

    /// `max_n g(n; M) / w_n` over the committee, the quantity bounded by
    /// `1/λ`.
    pub fn max_power_ratio(&self, weights: &WeightVector) -> f64 {
        self.seats
            .iter()
            .map(|s| s.voting_power / weights.get(s.index))
            .fold(0.0, f64::max)
    }

    /// Combined voting power of a set of participants.
    pub fn coalition_power(&self, coalition: &[usize]) -> f64 {
        coalition.iter().map(|&i| self.voting_power(i)).sum()
    }
}
