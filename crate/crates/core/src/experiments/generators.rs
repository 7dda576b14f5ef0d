//! Adversarial weight lists, addressed as `name` or `name:param`.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::harness::{substream, AdversaryWeights};
use crate::rational::{from_f64, int, parse_rational, ratio, Rational};

/// Generator names with a one-line description of the parameter.
pub const GENERATORS: &[(&str, &str)] = &[
    ("geometric", "w_i = rho^(i-1); param rho in (0,1], default 1/2"),
    ("one-heavy", "(1, eps, ..., eps); param eps in [0,1], default 0"),
    ("equal", "all weights 1; ties resolved by the tie-break order"),
    ("uniform-iid", "iid uniform on [0,1), sorted; drawn once per master seed"),
    ("exponential-iid", "iid exponential with rate lambda (default 1), sorted; drawn once per master seed"),
];

/// Stream reserved for iid weight draws, disjoint from every trial's streams.
const WEIGHT_STREAM_TRIAL: u64 = u64::MAX >> 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpec {
    pub name: String,
    pub param: Option<Rational>,
}

impl WeightSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (name, param) = match text.split_once(':') {
            Some((name, p)) => (name, Some(parse_rational(p.trim())?)),
            None => (text, None),
        };
        let name = name.trim();
        if !GENERATORS.iter().any(|(g, _)| *g == name) {
            return Err(Error::InvalidInput(format!(
                "unknown weight generator {name:?}; known: {}",
                GENERATORS.iter().map(|g| g.0).collect::<Vec<_>>().join(", ")
            )));
        }
        Ok(Self {
            name: name.to_string(),
            param,
        })
    }

    pub fn label(&self) -> String {
        match &self.param {
            Some(p) => format!("{}:{}", self.name, crate::rational::format_rational(p)),
            None => self.name.clone(),
        }
    }

    /// The weight list for `n` elements; iid families draw from `seed`.
    pub fn generate(&self, n: usize, seed: u64) -> Result<AdversaryWeights> {
        if n == 0 {
            return Err(Error::InvalidInput("weights need at least one element".into()));
        }
        let reject = || {
            Err(Error::InvalidInput(format!(
                "generator {} takes no parameter",
                self.name
            )))
        };
        match self.name.as_str() {
            "geometric" => {
                let rho = self.param.clone().unwrap_or_else(|| ratio(1, 2));
                if rho <= Rational::zero() || rho > Rational::one() {
                    return Err(Error::InvalidInput(format!("geometric ratio {rho} outside (0,1]")));
                }
                let mut w = Vec::with_capacity(n);
                let mut cur = int(1);
                for _ in 0..n {
                    w.push(cur.clone());
                    cur *= &rho;
                }
                AdversaryWeights::new(w)
            }
            "one-heavy" => {
                let eps = self.param.clone().unwrap_or_else(Rational::zero);
                if eps < Rational::zero() || eps > Rational::one() {
                    return Err(Error::InvalidInput(format!("one-heavy epsilon {eps} outside [0,1]")));
                }
                let mut w = vec![eps; n];
                w[0] = int(1);
                AdversaryWeights::new(w)
            }
            "equal" => {
                if self.param.is_some() {
                    return reject();
                }
                AdversaryWeights::new(vec![int(1); n])
            }
            "uniform-iid" => {
                if self.param.is_some() {
                    return reject();
                }
                let mut rng = substream(seed, WEIGHT_STREAM_TRIAL, 0);
                let draws: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
                iid(draws)
            }
            "exponential-iid" => {
                let rate = self.param.clone().unwrap_or_else(Rational::one);
                if rate <= Rational::zero() {
                    return Err(Error::InvalidInput(format!("exponential rate {rate} must be positive")));
                }
                let rate = crate::rational::to_f64(&rate);
                let mut rng = substream(seed, WEIGHT_STREAM_TRIAL, 0);
                let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln() / rate).collect();
                iid(draws)
            }
            _ => unreachable!("name validated in parse"),
        }
    }
}

fn iid(mut draws: Vec<f64>) -> Result<AdversaryWeights> {
    draws.sort_by(|a, b| b.total_cmp(a));
    AdversaryWeights::new(draws.into_iter().map(from_f64).collect::<Result<_>>()?)
}

/// `weight_generator("geometric:1/2", 3, seed)` and friends.
pub fn weight_generator(spec: &str, n: usize, seed: u64) -> Result<AdversaryWeights> {
    WeightSpec::parse(spec)?.generate(n, seed)
}
