use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, from_f64, to_f64, Rational};

/// The adversary's list `w_1 >= w_2 >= ... >= w_n >= 0`, held exactly and as
/// floats. Exact expectations use the rationals, simulation the floats.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryWeights {
    exact: Vec<Rational>,
    floats: Vec<f64>,
}

impl AdversaryWeights {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| **w < Rational::from_integer(0.into())) {
            return Err(Error::InvalidInput(format!("negative weight {w}")));
        }
        if let Some(i) = (1..weights.len()).find(|&i| weights[i] > weights[i - 1]) {
            return Err(Error::InvalidInput(format!(
                "weights must be nonincreasing; position {} exceeds its predecessor",
                i + 1
            )));
        }
        let floats = weights.iter().map(to_f64).collect();
        Ok(Self {
            exact: weights,
            floats,
        })
    }

    /// Sorts the values into nonincreasing order first.
    pub fn from_unsorted_f64(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("weights must be finite".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Self::new(values.into_iter().map(from_f64).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    pub fn exact(&self) -> &[Rational] {
        &self.exact
    }

    pub fn floats(&self) -> &[f64] {
        &self.floats
    }

    /// `w_1 + ... + w_k`.
    pub fn top_sum(&self, k: usize) -> Rational {
        self.exact.iter().take(k).sum()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.exact.iter().map(format_rational).collect()
    }
}

impl Serialize for AdversaryWeights {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}
