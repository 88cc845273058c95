//! Stake weights and the `id,weight` CSV format.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalized, strictly positive participant weights. Index order is the
/// order the caller supplied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates and renormalizes raw stakes so they sum to one.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &value) in raw.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveWeight { index, value });
            }
        }
        let total: f64 = raw.iter().sum();
        Ok(Self(raw.iter().map(|w| w / total).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, index: usize) -> f64 {
        self.0[index]
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// Total weight of a set of participants.
    pub fn coalition(&self, members: &[usize]) -> f64 {
        members.iter().map(|&i| self.0[i]).sum()
    }

    /// Indices ordered by `(weight, index)`.
    pub fn ascending_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.0[a].total_cmp(&self.0[b]).then(a.cmp(&b)));
        order
    }
}

/// Positive integer stakes, as required by the subset-count dynamic program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerWeightVector {
    raw: Vec<u64>,
    total: u64,
}

impl IntegerWeightVector {
    pub fn new(raw: Vec<u64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(index) = raw.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight { index, value: 0.0 });
        }
        let total = raw
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or_else(|| Error::Format("integer weights overflow u64".into()))?;
        Ok(Self { raw, total })
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn raw(&self) -> &[u64] {
        &self.raw
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn normalized(&self) -> WeightVector {
        let total = self.total as f64;
        WeightVector(self.raw.iter().map(|&w| w as f64 / total).collect())
    }
}

/// Weights as read from a file: integers when every entry is one.
#[derive(Clone, Debug, PartialEq)]
pub enum Stakes {
    Real(WeightVector),
    Integer(IntegerWeightVector),
}

impl Stakes {
    pub fn normalized(&self) -> WeightVector {
        match self {
            Stakes::Real(w) => w.clone(),
            Stakes::Integer(iw) => iw.normalized(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Stakes::Real(w) => w.len(),
            Stakes::Integer(iw) => iw.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Participants from an `id,weight` file; row order is index order.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub ids: Vec<String>,
    pub stakes: Stakes,
}

#[derive(Deserialize)]
struct Row {
    id: String,
    weight: String,
}

impl WeightTable {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    pub fn from_reader(reader: impl Read) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = csv.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["id", "weight"] {
            return Err(Error::Format(format!(
                "expected header `id,weight`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut ids = Vec::new();
        let mut texts = Vec::new();
        for row in csv.deserialize() {
            let row: Row = row?;
            ids.push(row.id);
            texts.push(row.weight);
        }
        if ids.is_empty() {
            return Err(Error::EmptyInput);
        }
        let integers: Option<Vec<u64>> = texts.iter().map(|t| t.parse::<u64>().ok()).collect();
        let stakes = match integers {
            Some(raw) => Stakes::Integer(IntegerWeightVector::new(raw)?),
            None => {
                let reals = texts
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.parse::<f64>()
                            .map_err(|_| Error::Format(format!("row {}: bad weight `{t}`", i + 1)))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                Stakes::Real(WeightVector::new(&reals)?)
            }
        };
        Ok(Self { ids, stakes })
    }
}
