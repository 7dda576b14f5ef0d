//! Online algorithms, all written against the comparison-only session, and a
//! registry that builds them by name.

mod log_rank;
mod secretary;
mod threshold;
mod zeroinfo;

use std::collections::BTreeMap;

pub use log_rank::{exponent_choices, floor_log3, level_grid, LogRankAlgorithm};
pub use secretary::{Classical, GreedyCocircuit, RejectAll};
pub use threshold::{
    alg1_offline_simulation, threshold_guarantee, OfflineOutcome, PrincipalMinorsAlgorithm,
    ThresholdAlgorithm,
};
pub use zeroinfo::{
    ColumnSparseAlgorithm, CographicAlgorithm, CographicVariant, LowDensityAlgorithm,
};

use crate::error::{Error, Result};
use crate::harness::Strategy;
use crate::matroid::SharedMatroid;
use crate::rational::{parse_rational, Rational};
use crate::zoo::{Instance, LinearMatroid, Multigraph};

/// Registered algorithm names with one-line descriptions and their parameters.
pub const ALGORITHMS: &[(&str, &str)] = &[
    ("classical", "classical secretary: sample floor(n/e), take the first better element"),
    ("alg1", "threshold algorithm for uniformly dense matroids; params p, rank"),
    ("alg2", "threshold algorithm on each principal minor; param p"),
    ("cographic", "zero-information cographic algorithm; param variant=secretary|pure"),
    ("low-density", "draw from a convex decomposition; param simplified=true|false"),
    ("greedy-cocircuit", "weight-blind greedy"),
    ("column-sparse", "row-permutation blocks with one secretary each"),
    ("log-rank", "comparison-only O(log r) algorithm; param rank=<r>|unknown"),
    ("reject-all", "accepts nothing"),
];

/// What an algorithm may be built for: the oracle plus any structure a
/// particular algorithm needs.
#[derive(Debug, Clone)]
pub struct Target {
    pub matroid: SharedMatroid,
    /// Graph of a cographic instance.
    pub cographic_graph: Option<Multigraph>,
    /// Representing matrix, explicit or the incidence matrix of a graphic instance.
    pub matrix: Option<LinearMatroid>,
}

impl Target {
    pub fn new(matroid: SharedMatroid) -> Self {
        Self {
            matroid,
            cographic_graph: None,
            matrix: None,
        }
    }

    pub fn from_instance(instance: &Instance) -> Self {
        let (cographic_graph, matrix) = match instance {
            Instance::Cographic(c) => (Some(c.graph().clone()), None),
            Instance::Graphic(g) => (None, Some(LinearMatroid::incidence(g.graph()))),
            Instance::Linear(l) => (None, Some(l.clone())),
            _ => (None, None),
        };
        Self {
            matroid: instance.oracle(),
            cographic_graph,
            matrix,
        }
    }
}

/// Parameters as `key=value` strings.
pub type Params = BTreeMap<String, String>;

struct ParamReader<'a> {
    algorithm: &'a str,
    params: &'a Params,
    used: Vec<&'a str>,
}

impl<'a> ParamReader<'a> {
    fn get(&mut self, key: &'a str) -> Option<&'a str> {
        self.used.push(key);
        self.params.get(key).map(String::as_str)
    }

    fn rational(&mut self, key: &'a str) -> Result<Option<Rational>> {
        self.get(key).map(parse_rational).transpose()
    }

    fn usize(&mut self, key: &'a str) -> Result<Option<usize>> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::InvalidInput(format!("{key} must be a nonnegative integer, got {v}")))
            })
            .transpose()
    }

    fn bool(&mut self, key: &'a str) -> Result<Option<bool>> {
        self.get(key)
            .map(|v| match v {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(Error::InvalidInput(format!("{key} must be true or false, got {v}"))),
            })
            .transpose()
    }

    fn finish(self) -> Result<()> {
        match self.params.keys().find(|k| !self.used.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidInput(format!(
                "unknown parameter {k} for algorithm {}",
                self.algorithm
            ))),
            None => Ok(()),
        }
    }
}

/// Builds a registered algorithm for `target`.
pub fn build_strategy(name: &str, params: &Params, target: &Target) -> Result<Box<dyn Strategy>> {
    let mut p = ParamReader {
        algorithm: name,
        params,
        used: Vec::new(),
    };
    let m = &target.matroid;
    let strategy: Box<dyn Strategy> = match name {
        "classical" => Box::new(Classical),
        "reject-all" => Box::new(RejectAll),
        "greedy-cocircuit" => Box::new(GreedyCocircuit),
        "alg1" => {
            let prob = p.rational("p")?;
            let base = ThresholdAlgorithm::for_matroid(&**m, prob)?;
            match p.usize("rank")? {
                Some(r) => Box::new(ThresholdAlgorithm::new(base.p().clone(), r)?),
                None => Box::new(base),
            }
        }
        "alg2" => Box::new(PrincipalMinorsAlgorithm::new(m.clone(), p.rational("p")?)?),
        "cographic" => {
            let variant = match p.get("variant").unwrap_or("secretary") {
                "secretary" => CographicVariant::Secretary,
                "pure" => CographicVariant::PureBases,
                v => return Err(Error::InvalidInput(format!("unknown cographic variant {v}"))),
            };
            let g = target.cographic_graph.as_ref().ok_or_else(|| {
                Error::InvalidInput("cographic needs a cographic instance (cograph file)".into())
            })?;
            Box::new(CographicAlgorithm::new(g, variant)?)
        }
        "low-density" => Box::new(LowDensityAlgorithm::new(m.clone(), p.bool("simplified")?.unwrap_or(false))?),
        "column-sparse" => {
            let a = target.matrix.clone().ok_or_else(|| {
                Error::InvalidInput("column-sparse needs a matrix or graphic instance".into())
            })?;
            Box::new(ColumnSparseAlgorithm::new(a))
        }
        "log-rank" => {
            let rank = match p.get("rank") {
                None | Some("unknown") => None,
                Some("known") => Some(crate::matroid::full_rank(&**m)),
                Some(v) => Some(v.parse().map_err(|_| {
                    Error::InvalidInput(format!("rank must be an integer, known or unknown, got {v}"))
                })?),
            };
            Box::new(LogRankAlgorithm::new(rank))
        }
        other => {
            let names: Vec<&str> = ALGORITHMS.iter().map(|(n, _)| *n).collect();
            return Err(Error::InvalidInput(format!(
                "unknown algorithm {other}; expected one of {}",
                names.join(", ")
            )));
        }
    };
    p.finish()?;
    Ok(strategy)
}

/// Parses `key=value` pairs.
pub fn parse_params<S: AsRef<str>>(pairs: &[S]) -> Result<Params> {
    pairs
        .iter()
        .map(|s| {
            let s = s.as_ref();
            s.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::InvalidInput(format!("parameter {s} is not of the form key=value")))
        })
        .collect()
}
