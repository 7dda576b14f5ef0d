//! Randomness seen by algorithms, and per-trial seed derivation.
//!
//! Every trial draws from four independent ChaCha8 streams of one master
//! seed: stream `4t` for the assignment `sigma`, `4t + 1` for the arrival
//! order `pi`, `4t + 2` for the tie-break order `tau`, and `4t + 3` for the
//! algorithm's own draws. Trials are therefore reproducible individually and
//! independent of how they are scheduled across workers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::rational::{format_rational, to_f64, Rational};

const SIGMA: u64 = 0;
const PI: u64 = 1;
const TAU: u64 = 2;
const ALGORITHM: u64 = 3;

/// The generator for one substream of one trial.
pub fn substream(master_seed: u64, trial: u64, which: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((trial << 2) | which);
    rng
}

fn permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `sigma[i]` is the element receiving the `i`-th largest weight, `pi` lists
/// elements in arrival order, `tau[e]` ranks elements for tie-breaking (a
/// larger value is heavier among equal weights).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRandomness {
    pub sigma: Vec<usize>,
    pub pi: Vec<usize>,
    pub tau: Vec<usize>,
}

impl TrialRandomness {
    pub fn derive(master_seed: u64, trial: u64, n: usize) -> Self {
        Self {
            sigma: permutation(&mut substream(master_seed, trial, SIGMA), n),
            pi: permutation(&mut substream(master_seed, trial, PI), n),
            tau: permutation(&mut substream(master_seed, trial, TAU), n),
        }
    }

    pub fn algorithm_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
        substream(master_seed, trial, ALGORITHM)
    }
}

/// Random choices an algorithm may make. Implemented by a seeded generator
/// for simulation and by a replaying choice tree for exact enumeration, so
/// algorithms should draw only through these methods.
pub trait Randomness {
    /// A draw from `Bin(n, p)`.
    fn binomial(&mut self, n: usize, p: &Rational) -> usize;

    /// Uniform on `0..len`; `len` must be positive.
    fn uniform_index(&mut self, len: usize) -> usize;

    /// Index `i` with probability `weights[i] / sum(weights)`.
    fn categorical(&mut self, weights: &[Rational]) -> usize;

    /// Uniform on `[0, 1)`. Not enumerable, so exact engines refuse it.
    fn uniform_real(&mut self) -> Result<f64>;
}

/// Fisher-Yates through [`Randomness::uniform_index`].
pub fn shuffle<T>(rng: &mut dyn Randomness, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = rng.uniform_index(i + 1);
        items.swap(i, j);
    }
}

/// One recorded draw, for trial transcripts.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Draw {
    Binomial { n: usize, p: String, value: usize },
    Index { len: usize, value: usize },
    Categorical { options: usize, value: usize },
    Real { value: f64 },
}

/// Seeded simulation randomness with an optional draw log.
#[derive(Debug)]
pub struct MonteCarlo {
    rng: ChaCha8Rng,
    log: Option<Vec<Draw>>,
}

impl MonteCarlo {
    pub fn new(rng: ChaCha8Rng) -> Self {
        Self { rng, log: None }
    }

    pub fn recording(rng: ChaCha8Rng) -> Self {
        Self {
            rng,
            log: Some(Vec::new()),
        }
    }

    pub fn take_log(&mut self) -> Vec<Draw> {
        self.log.take().unwrap_or_default()
    }

    fn record(&mut self, draw: impl FnOnce() -> Draw) {
        if let Some(log) = &mut self.log {
            log.push(draw());
        }
    }
}

impl Randomness for MonteCarlo {
    fn binomial(&mut self, n: usize, p: &Rational) -> usize {
        let pf = to_f64(p);
        let value = (0..n).filter(|_| self.rng.gen::<f64>() < pf).count();
        self.record(|| Draw::Binomial {
            n,
            p: format_rational(p),
            value,
        });
        value
    }

    fn uniform_index(&mut self, len: usize) -> usize {
        assert!(len > 0, "uniform_index over an empty range");
        let value = self.rng.gen_range(0..len);
        self.record(|| Draw::Index { len, value });
        value
    }

    fn categorical(&mut self, weights: &[Rational]) -> usize {
        let floats: Vec<f64> = weights.iter().map(to_f64).collect();
        let total: f64 = floats.iter().sum();
        assert!(total > 0.0, "categorical draw with no positive weight");
        let mut u = self.rng.gen::<f64>() * total;
        let mut value = floats.iter().rposition(|&w| w > 0.0).unwrap_or(0);
        for (i, w) in floats.iter().enumerate() {
            if *w > 0.0 && u < *w {
                value = i;
                break;
            }
            u -= w;
        }
        self.record(|| Draw::Categorical {
            options: weights.len(),
            value,
        });
        value
    }

    fn uniform_real(&mut self) -> Result<f64> {
        let value = self.rng.gen::<f64>();
        self.record(|| Draw::Real { value });
        Ok(value)
    }
}
