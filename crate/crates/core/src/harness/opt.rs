//! The optimum's expectation over random assignments, directly and through
//! expected prefix ranks: with `A_j` the elements holding the top `j` weights,
//! `E[w(OPT)] = E[r(A_n)] w_n + sum_{j<n} E[r(A_j)] (w_j - w_{j+1})`.

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use serde::Serialize;

use super::random::substream;
use super::weights::AdversaryWeights;
use crate::error::{Error, Result};
use crate::matroid::{greedy_scan, Matroid};
use crate::principal::{Limits, RankTable};
use crate::rational::{binomial, factorial, Rational};

/// Largest ground set for enumerating all assignments directly.
pub const DIRECT_OPT_BOUND: usize = 8;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self { mean: 0.0, stderr: 0.0, samples: 0 };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            mean,
            stderr: (var / n as f64).sqrt(),
            samples: n as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expectation {
    Exact(Rational),
    Estimated(Estimate),
}

/// `E[r(A_j)]` for `j = 1..=n`, exactly: the average rank of `j`-subsets.
pub fn expected_rank_profile(m: &dyn Matroid) -> Result<Vec<Rational>> {
    let n = m.ground_size();
    let table = RankTable::build(m, &Limits::default())?;
    let mut sums = vec![0u64; n + 1];
    for mask in 0..=table.full_mask() {
        sums[mask.count_ones() as usize] += table.rank(mask) as u64;
    }
    Ok((1..=n)
        .map(|j| Rational::new(sums[j].into(), binomial(n, j)))
        .collect())
}

/// Monte Carlo prefix ranks over random assignments.
pub fn expected_rank_profile_mc(m: &dyn Matroid, trials: u64, seed: u64) -> Vec<Estimate> {
    let n = m.ground_size();
    let mut samples = vec![Vec::with_capacity(trials as usize); n];
    for t in 0..trials {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut substream(seed, t, 0));
        let mut basis = Vec::new();
        for (j, &e) in sigma.iter().enumerate() {
            basis.push(e);
            if !m.is_independent(&basis) {
                basis.pop();
            }
            samples[j].push(basis.len() as f64);
        }
    }
    samples.iter().map(|s| Estimate::from_samples(s)).collect()
}

/// Combines expected prefix ranks with the weights.
pub fn rank_formula(ranks: &[Rational], weights: &AdversaryWeights) -> Result<Rational> {
    let w = weights.exact();
    if ranks.len() != w.len() {
        return Err(Error::InvalidInput(format!(
            "{} prefix ranks for {} weights",
            ranks.len(),
            w.len()
        )));
    }
    let n = w.len();
    Ok((0..n)
        .map(|j| {
            let next = if j + 1 < n { w[j + 1].clone() } else { Rational::zero() };
            &ranks[j] * (&w[j] - next)
        })
        .sum())
}

pub fn opt_expectation_by_rank_formula(
    m: &dyn Matroid,
    weights: &AdversaryWeights,
    mode: Mode,
) -> Result<Expectation> {
    if weights.len() != m.ground_size() {
        return Err(Error::InvalidInput(format!(
            "{} weights for a ground set of {} elements",
            weights.len(),
            m.ground_size()
        )));
    }
    match mode {
        Mode::Exact => Ok(Expectation::Exact(rank_formula(&expected_rank_profile(m)?, weights)?)),
        Mode::MonteCarlo { trials, seed } => {
            let n = m.ground_size();
            let w = weights.floats();
            let samples: Vec<f64> = (0..trials)
                .map(|t| {
                    let mut sigma: Vec<usize> = (0..n).collect();
                    sigma.shuffle(&mut substream(seed, t, 0));
                    let mut basis = Vec::new();
                    let mut total = 0.0;
                    for (j, &e) in sigma.iter().enumerate() {
                        basis.push(e);
                        if !m.is_independent(&basis) {
                            basis.pop();
                        }
                        let next = if j + 1 < n { w[j + 1] } else { 0.0 };
                        total += basis.len() as f64 * (w[j] - next);
                    }
                    total
                })
                .collect();
            Ok(Expectation::Estimated(Estimate::from_samples(&samples)))
        }
    }
}

/// `E_sigma[w(OPT(sigma))]` by running greedy under every assignment.
pub fn opt_expectation_direct(m: &dyn Matroid, weights: &AdversaryWeights) -> Result<Rational> {
    let n = m.ground_size();
    if n > DIRECT_OPT_BOUND {
        return Err(Error::SizeBound {
            what: "assignment enumeration",
            size: n,
            bound: DIRECT_OPT_BOUND,
        });
    }
    if weights.len() != n {
        return Err(Error::InvalidInput(format!("{} weights for {n} elements", weights.len())));
    }
    let w = weights.exact();
    let mut total = Rational::zero();
    for sigma in (0..n).permutations(n) {
        let mut index_of = vec![0; n];
        for (i, &e) in sigma.iter().enumerate() {
            index_of[e] = i;
        }
        for e in greedy_scan(m, &sigma) {
            total += &w[index_of[e]];
        }
    }
    Ok(total / Rational::from_integer(factorial(n)))
}
