//! Batch experiments: instance loading, weight generators, Monte Carlo and
//! exact drivers with the matching competitive guarantee, verification
//! suites, and CSV/JSON emission.

mod generators;
mod output;
mod verify;

pub mod cli;

pub use generators::{weight_generator, WeightSpec, GENERATORS};
pub use output::{render, write_output, Format, Tabular};
pub use verify::{default_instances, run_suite, CheckRow, SuiteOptions, SuiteReport, SUITES, SUITE_WEIGHTS};

use std::path::Path;

use num_traits::Signed;
use serde::Serialize;

use crate::algorithms::{build_strategy, threshold_guarantee, Params, Target};
use crate::constants::{self, NamedConstant};
use crate::error::{Error, Result};
use crate::harness::{
    inclusion_profile_with, run_trials, AdversaryWeights, ExactConfig, Estimate, Strategy,
};
use crate::matroid::{c_star, full_rank};
use crate::principal::{density, is_uniformly_dense};
use crate::rational::{format_rational, from_f64, int, parse_rational, to_f64, Rational};
use crate::zoo::{column_sparsity, fixture, parse_instance_file, Instance, FIXTURE_NAMES};

/// Exact-mode comparisons tolerate this much (absolute) slack, covering the
/// truncation of irrational constants.
pub fn exact_tolerance() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(12))
}

/// Loads `zoo:<name>` from the built-in fixtures, anything else as a file.
pub fn load_instance(source: &str) -> Result<Instance> {
    match source.strip_prefix("zoo:") {
        Some(name) => fixture(name).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown fixture {name:?}; known: {}",
                FIXTURE_NAMES.join(", ")
            ))
        }),
        None => parse_instance_file(Path::new(source)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Exact,
    #[serde(rename = "mc")]
    MonteCarlo,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// A matroid file or `zoo:<fixture>`.
    pub matroid: String,
    pub algorithm: String,
    pub params: Params,
    pub weights: WeightSpec,
    pub trials: u64,
    pub seed: u64,
    pub mode: RunMode,
    pub exact: ExactConfig,
}

impl ExperimentConfig {
    pub fn new(matroid: impl Into<String>, algorithm: impl Into<String>, weights: &str) -> Result<Self> {
        Ok(Self {
            matroid: matroid.into(),
            algorithm: algorithm.into(),
            params: Params::new(),
            weights: WeightSpec::parse(weights)?,
            trials: 10_000,
            seed: 0,
            mode: RunMode::MonteCarlo,
            exact: ExactConfig::default(),
        })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        if self.mode == RunMode::Exact && n > self.exact.max_n {
            return Err(Error::SizeBound {
                what: "exact mode",
                size: n,
                bound: self.exact.max_n,
            });
        }
        Ok(())
    }
}

/// A loaded experiment: instance, strategy and weights.
pub struct Prepared {
    pub instance: Instance,
    pub target: Target,
    pub strategy: Box<dyn Strategy>,
    pub weights: AdversaryWeights,
}

pub fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    let instance = load_instance(&config.matroid)?;
    let target = Target::from_instance(&instance);
    let n = target.matroid.ground_size();
    config.validate(n)?;
    let strategy = build_strategy(&config.algorithm, &config.params, &target)?;
    let weights = config.weights.generate(n, config.seed)?;
    Ok(Prepared {
        instance,
        target,
        strategy,
        weights,
    })
}

/// A published competitive guarantee checked against a measurement.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub statement: String,
    pub constant: NamedConstant,
    /// Measured left-hand side minus the bound; nonnegative when it holds.
    pub margin: f64,
    /// Slack granted to the margin: sampling error in Monte Carlo mode,
    /// constant truncation in exact mode.
    pub tolerance: f64,
    pub passed: bool,
}

/// Expected weights of OPT and ALG and their ratio.
#[derive(Debug, Clone, Serialize)]
pub struct RatioEstimate {
    pub matroid: String,
    pub algorithm: String,
    pub weights: String,
    pub mode: RunMode,
    pub n: usize,
    pub rank: usize,
    pub opt: f64,
    pub opt_stderr: f64,
    pub alg: f64,
    pub alg_stderr: f64,
    /// `opt / alg`; absent when ALG is zero.
    pub ratio: Option<f64>,
    pub ratio_stderr: Option<f64>,
    /// ALG is zero while OPT is positive.
    pub ratio_infinite: bool,
    pub trials: u64,
    pub seed: u64,
    /// Exact values as `p/q` strings (exact mode only).
    pub opt_exact: Option<String>,
    pub alg_exact: Option<String>,
    pub bound: Option<BoundCheck>,
}

impl RatioEstimate {
    pub fn passed(&self) -> bool {
        self.bound.as_ref().map_or(true, |b| b.passed)
    }
}

/// Guarantee of the configured algorithm on this instance, if one applies.
#[derive(Debug, Clone)]
enum Guarantee {
    /// `E[w(ALG)] >= coef * (w_1 + ... + w_top)`.
    TopSum { coef: Rational, top: usize, name: String },
    /// `c * E[w(ALG)] >= E[w(OPT)]`.
    Ratio { c: Rational, name: String },
}

fn guarantee(config: &ExperimentConfig, target: &Target) -> Result<Option<Guarantee>> {
    let m = &*target.matroid;
    let param = |k: &str| config.params.get(k).map(String::as_str);
    Ok(match config.algorithm.as_str() {
        "alg1" => {
            let r = full_rank(m);
            let rank_ok = param("rank").map_or(true, |v| v.parse() == Ok(r));
            if !rank_ok || r == 0 || !is_uniformly_dense(m).unwrap_or(false) {
                None
            } else {
                match param("p") {
                    None => Some(Guarantee::TopSum {
                        coef: constants::inv_two_e().clone(),
                        top: r,
                        name: "1/(2e)".into(),
                    }),
                    Some(p) => {
                        let p = parse_rational(p)?;
                        Some(Guarantee::TopSum {
                            coef: from_f64(threshold_guarantee(&p))?,
                            top: r,
                            name: format!("-p^2 ln p at p={}", format_rational(&p)),
                        })
                    }
                }
            }
        }
        "alg2" if param("p").is_none() => Some(Guarantee::Ratio {
            c: constants::general_ratio().clone(),
            name: "2e^2/(e-1)".into(),
        }),
        "cographic" => match param("variant") {
            Some("pure") => Some(Guarantee::Ratio { c: int(3), name: "3".into() }),
            _ => Some(Guarantee::Ratio {
                c: int(3) * constants::e(),
                name: "3e".into(),
            }),
        },
        "greedy-cocircuit" => c_star(m).ok().map(|c| Guarantee::Ratio {
            c: int(c as i64),
            name: format!("c*(M)={c}"),
        }),
        "low-density" if param("simplified").map_or(true, |v| v == "false") => density(m).ok().map(|d| {
            Guarantee::Ratio {
                name: format!("gamma(M)={}", format_rational(&d.value)),
                c: d.value,
            }
        }),
        "column-sparse" => target.matrix.as_ref().map(|a| {
            let k = column_sparsity(a);
            Guarantee::Ratio {
                c: int(k as i64) * constants::e(),
                name: format!("ke, k={k}"),
            }
        }),
        _ => None,
    })
}

fn statement(g: &Guarantee) -> String {
    match g {
        Guarantee::TopSum { name, top, .. } => format!("E[w(ALG)] >= {name} * (w_1 + ... + w_{top})"),
        Guarantee::Ratio { name, .. } => format!("E[w(OPT)] / E[w(ALG)] <= {name}"),
    }
}

fn exact_check(g: &Guarantee, alg: &Rational, opt: &Rational, weights: &AdversaryWeights) -> BoundCheck {
    let (margin, constant) = match g {
        Guarantee::TopSum { coef, top, name } => (alg - coef * weights.top_sum(*top), NamedConstant::new(name, coef)),
        Guarantee::Ratio { c, name } => (c * alg - opt, NamedConstant::new(name, c)),
    };
    let tol = exact_tolerance();
    BoundCheck {
        statement: statement(g),
        constant,
        margin: to_f64(&margin),
        tolerance: to_f64(&tol),
        passed: margin >= -tol,
    }
}

/// Paired-sample statistics for the ratio of means `mean(opt) / mean(alg)`.
fn ratio_stats(opt: &[f64], alg: &[f64]) -> (Estimate, Estimate, Option<(f64, f64)>) {
    let eo = Estimate::from_samples(opt);
    let ea = Estimate::from_samples(alg);
    if ea.mean == 0.0 {
        return (eo, ea, None);
    }
    let n = opt.len() as f64;
    let r = eo.mean / ea.mean;
    let cov = if opt.len() > 1 {
        opt.iter().zip(alg).map(|(x, y)| (x - eo.mean) * (y - ea.mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    // Delta method: Var(X/Y) ~ (Var X - 2R Cov + R^2 Var Y) / (n Ybar^2).
    let var_x = eo.stderr * eo.stderr;
    let var_y = ea.stderr * ea.stderr;
    let var = (var_x - 2.0 * r * cov / n + r * r * var_y) / (ea.mean * ea.mean);
    (eo, ea, Some((r, var.max(0.0).sqrt())))
}

/// Monte Carlo estimate over `config.trials` independent trials.
pub fn simulate(config: &ExperimentConfig) -> Result<RatioEstimate> {
    let prep = prepare(config)?;
    simulate_prepared(config, &prep)
}

pub fn simulate_prepared(config: &ExperimentConfig, prep: &Prepared) -> Result<RatioEstimate> {
    let m = &*prep.target.matroid;
    let outcomes = run_trials(m, &prep.weights, &*prep.strategy, config.seed, config.trials)?;
    let opt: Vec<f64> = outcomes.iter().map(|o| o.opt_weight).collect();
    let alg: Vec<f64> = outcomes.iter().map(|o| o.accepted_weight).collect();
    let (eo, ea, ratio) = ratio_stats(&opt, &alg);
    let bound = guarantee(config, &prep.target)?.map(|g| {
        let (margin, stderr, constant) = match &g {
            Guarantee::TopSum { coef, top, name } => {
                let target = to_f64(&(coef * prep.weights.top_sum(*top)));
                (ea.mean - target, ea.stderr, NamedConstant::new(name, coef))
            }
            Guarantee::Ratio { c, name } => match ratio {
                Some((r, se)) => (to_f64(c) - r, se, NamedConstant::new(name, c)),
                None => (f64::NEG_INFINITY, 0.0, NamedConstant::new(name, c)),
            },
        };
        BoundCheck {
            statement: statement(&g),
            constant,
            margin,
            tolerance: 4.0 * stderr,
            passed: margin >= -4.0 * stderr,
        }
    });
    Ok(RatioEstimate {
        matroid: config.matroid.clone(),
        algorithm: prep.strategy.name(),
        weights: config.weights.label(),
        mode: RunMode::MonteCarlo,
        n: m.ground_size(),
        rank: full_rank(m),
        opt: eo.mean,
        opt_stderr: eo.stderr,
        alg: ea.mean,
        alg_stderr: ea.stderr,
        ratio: ratio.map(|r| r.0),
        ratio_stderr: ratio.map(|r| r.1),
        ratio_infinite: ratio.is_none() && eo.mean > 0.0,
        trials: config.trials,
        seed: config.seed,
        opt_exact: None,
        alg_exact: None,
        bound,
    })
}

/// Exact expectations by enumeration; error bars are zero.
pub fn exact(config: &ExperimentConfig) -> Result<RatioEstimate> {
    let mut config = config.clone();
    config.mode = RunMode::Exact;
    let prep = prepare(&config)?;
    let m = &*prep.target.matroid;
    let profile = inclusion_profile_with(m, &*prep.strategy, &config.exact)?;
    let e = profile.expectation(&prep.weights)?;
    let bound = guarantee(&config, &prep.target)?.map(|g| exact_check(&g, &e.alg, &e.opt, &prep.weights));
    let ratio = e.ratio();
    Ok(RatioEstimate {
        matroid: config.matroid.clone(),
        algorithm: prep.strategy.name(),
        weights: config.weights.label(),
        mode: RunMode::Exact,
        n: m.ground_size(),
        rank: full_rank(m),
        opt: to_f64(&e.opt),
        opt_stderr: 0.0,
        alg: to_f64(&e.alg),
        alg_stderr: 0.0,
        ratio: ratio.as_ref().map(to_f64),
        ratio_stderr: ratio.as_ref().map(|_| 0.0),
        ratio_infinite: ratio.is_none() && e.opt.is_positive(),
        trials: profile.sessions,
        seed: config.seed,
        opt_exact: Some(format_rational(&e.opt)),
        alg_exact: Some(format_rational(&e.alg)),
        bound,
    })
}

/// Runs `config` in its own mode.
pub fn run(config: &ExperimentConfig) -> Result<RatioEstimate> {
    match config.mode {
        RunMode::Exact => exact(config),
        RunMode::MonteCarlo => simulate(config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(m: &str, alg: &str, w: &str) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(m, alg, w).unwrap();
        c.trials = 2000;
        c.seed = 3;
        c
    }

    #[test]
    fn classical_on_a_single_element() {
        let single = std::env::temp_dir().join(format!("matsec-u11-{}.mat", std::process::id()));
        std::fs::write(&single, "uniform 1 1\n").unwrap();
        let c = config(single.to_str().unwrap(), "classical", "one-heavy");
        assert_eq!(exact(&c).unwrap().ratio, Some(1.0));
        assert_eq!(simulate(&c).unwrap().ratio, Some(1.0));
        std::fs::remove_file(single).ok();
    }

    #[test]
    fn reject_all_reports_an_infinite_ratio() {
        let c = config("zoo:u2-4", "reject-all", "geometric");
        for r in [simulate(&c).unwrap(), exact(&c).unwrap()] {
            assert_eq!(r.alg, 0.0);
            assert_eq!(r.ratio, None);
            assert!(r.ratio_infinite);
        }
    }

    #[test]
    fn alg1_on_u24_meets_its_bound_exactly() {
        let r = exact(&config("zoo:u2-4", "alg1", "one-heavy")).unwrap();
        let b = r.bound.unwrap();
        assert!(b.passed && b.margin > 0.0, "{b:?}");
        assert_eq!(b.constant.name, "1/(2e)");
    }

    #[test]
    fn delta_method_matches_a_degenerate_case() {
        // ALG is exactly half of OPT in every trial: the ratio has no spread.
        let opt = [2.0, 4.0, 6.0, 8.0];
        let alg = [1.0, 2.0, 3.0, 4.0];
        let (_, _, r) = ratio_stats(&opt, &alg);
        let (r, se) = r.unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        assert!(se < 1e-9);
    }

    #[test]
    fn exact_mode_enforces_the_size_bound() {
        let c = config("zoo:k5", "classical", "equal");
        assert!(matches!(exact(&c), Err(Error::SizeBound { .. })));
        let mut c = config("zoo:k4", "classical", "equal");
        c.trials = 0;
        assert!(simulate(&c).is_err());
    }
}
