//! Named verification suites. Each check reports the measured value next to
//! the bound and the constant it involves.

use num_traits::One;
use rand::seq::SliceRandom;
use serde::Serialize;

use super::exact_tolerance;
use crate::algorithms::{LowDensityAlgorithm, ThresholdAlgorithm};
use crate::constants::{self, NamedConstant};
use crate::error::{Error, Result};
use crate::harness::{
    expected_rank_profile, inclusion_profile, opt_expectation_by_rank_formula, opt_expectation_direct,
    rank_formula, run_trials, substream, AdversaryWeights, Expectation, Mode,
};
use crate::matroid::{c_star, full_rank, loops, Matroid, SharedMatroid};
use crate::principal::{
    associated_partition, check_principal_sequence, convex_decomposition, density, is_uniformly_dense,
    minors_of, principal_sequence,
};
use crate::rational::{format_rational, int, ratio, to_f64, Rational};
use crate::zoo::{fixture, fixtures_up_to, Instance};

use super::weight_generator;

pub const SUITES: &[(&str, &str)] = &[
    ("rank-formula", "expected optimum through expected prefix ranks equals direct enumeration"),
    ("greedy-selection", "greedy keeps the j-th uniformly random element of a uniformly dense matroid with probability >= 1-(j-1)/r"),
    ("principal-structure", "principal sequence: nesting, strictly decreasing critical values, extreme minimizers, last value >= 1"),
    ("minor-density", "every principal minor is uniformly dense with density equal to its critical value"),
    ("partition-approximation", "E[r_P(A_j)] >= (1-1/e) E[r_M(A_j)] for the associated partition matroid P, and likewise for expected optima"),
    ("threshold-bound", "exact threshold algorithm on uniformly dense matroids: E[w(ALG)] >= 1/(2e) times the top-r weight"),
    ("uniform-selection", "convex decomposition of the 1/gamma point, and low-density selection frequency 1/gamma(M)"),
    ("density-cocircuit", "gamma(M) <= c*(M)"),
];

/// Weight lists used wherever a suite needs "several adversaries".
pub const SUITE_WEIGHTS: &[&str] = &["one-heavy", "geometric:1/2", "equal"];

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Monte Carlo samples for the statistical suites.
    pub trials: u64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            trials: 100_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub instance: String,
    pub check: String,
    pub constant: Option<NamedConstant>,
    pub measured: String,
    pub bound: String,
    /// Measured minus bound in the direction that must be nonnegative.
    pub margin: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckRow>,
}

struct Rows {
    instance: String,
    rows: Vec<CheckRow>,
}

impl Rows {
    fn new(instance: &str) -> Self {
        Self {
            instance: instance.to_string(),
            rows: Vec::new(),
        }
    }

    fn push(
        &mut self,
        check: String,
        constant: Option<NamedConstant>,
        measured: String,
        bound: String,
        margin: Option<f64>,
        passed: bool,
    ) {
        self.rows.push(CheckRow {
            instance: self.instance.clone(),
            check,
            constant,
            measured,
            bound,
            margin,
            passed,
        });
    }

    /// `lhs >= rhs - tolerance`, exactly.
    fn at_least(&mut self, check: String, constant: Option<NamedConstant>, lhs: &Rational, rhs: &Rational) {
        let margin = lhs - rhs;
        let passed = margin >= -exact_tolerance();
        self.push(
            check,
            constant,
            display(lhs),
            display(rhs),
            Some(to_f64(&margin)),
            passed,
        );
    }
}

/// Exact when short, otherwise a 17-digit decimal.
fn display(x: &Rational) -> String {
    let exact = format_rational(x);
    if exact.len() <= 32 {
        exact
    } else {
        format!("{:.17}", to_f64(x))
    }
}

fn named(names: &[&str]) -> Vec<(String, Instance)> {
    names
        .iter()
        .map(|&n| (n.to_string(), fixture(n).expect("known fixture")))
        .collect()
}

fn up_to(n: usize) -> Vec<(String, Instance)> {
    fixtures_up_to(n).into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Instances a suite runs on when none are given.
pub fn default_instances(suite: &str) -> Vec<(String, Instance)> {
    match suite {
        "rank-formula" => up_to(7),
        "greedy-selection" => named(&["k5", "u4-8"]),
        "principal-structure" | "minor-density" | "partition-approximation" => up_to(14),
        "threshold-bound" => named(&["u2-4", "u1-5", "k4"]),
        "uniform-selection" => named(&["u1-2", "triangle", "triangle-pendant", "k4", "u1-3+free-2"]),
        "density-cocircuit" => up_to(10),
        _ => Vec::new(),
    }
}

fn weights_for(n: usize) -> Result<Vec<(&'static str, AdversaryWeights)>> {
    SUITE_WEIGHTS.iter().map(|&w| Ok((w, weight_generator(w, n, 0)?))).collect()
}

fn rank_formula_rows(rows: &mut Rows, m: &SharedMatroid) -> Result<()> {
    for (wname, w) in weights_for(m.ground_size())? {
        let Expectation::Exact(by_ranks) = opt_expectation_by_rank_formula(&**m, &w, Mode::Exact)? else {
            return Err(Error::Internal("exact mode returned an estimate".into()));
        };
        let direct = opt_expectation_direct(&**m, &w)?;
        rows.push(
            format!("rank formula = direct enumeration, weights {wname}"),
            None,
            format_rational(&by_ranks),
            format_rational(&direct),
            Some(to_f64(&(&by_ranks - &direct))),
            by_ranks == direct,
        );
    }
    Ok(())
}

fn greedy_selection_rows(rows: &mut Rows, m: &SharedMatroid, opts: &SuiteOptions) -> Result<()> {
    if !is_uniformly_dense(&**m)? {
        return Err(Error::InvalidInput(format!("{} is not uniformly dense", rows.instance)));
    }
    let n = m.ground_size();
    let r = full_rank(&**m);
    let mut hits = vec![0u64; r];
    for t in 0..opts.trials {
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(&mut substream(opts.seed, t, 0));
        let mut kept = Vec::with_capacity(r);
        for (j, &e) in seq.iter().take(r).enumerate() {
            kept.push(e);
            if m.is_independent(&kept) {
                hits[j] += 1;
            } else {
                kept.pop();
            }
        }
    }
    let trials = opts.trials as f64;
    for (j, &h) in hits.iter().enumerate() {
        let freq = h as f64 / trials;
        let stderr = (freq * (1.0 - freq) / trials).sqrt();
        let bound = ratio((r - j) as i64, r as i64);
        let margin = freq - to_f64(&bound);
        rows.push(
            format!("selection frequency at position {} (3 stderr = {:.2e})", j + 1, 3.0 * stderr),
            Some(NamedConstant::new(format!("1-{j}/{r}"), &bound)),
            freq.to_string(),
            format_rational(&bound),
            Some(margin),
            margin >= -3.0 * stderr,
        );
    }
    Ok(())
}

fn require_loopless(rows: &Rows, m: &SharedMatroid) -> Result<()> {
    let l = loops(&**m);
    if l.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{} has loops {l:?}", rows.instance)))
    }
}

fn principal_structure_rows(rows: &mut Rows, m: &SharedMatroid) -> Result<()> {
    require_loopless(rows, m)?;
    let seq = principal_sequence(&**m)?;
    for c in check_principal_sequence(m, &seq)? {
        rows.push(c.name, None, c.detail, String::new(), None, c.passed);
    }
    Ok(())
}

fn minor_density_rows(rows: &mut Rows, m: &SharedMatroid) -> Result<()> {
    require_loopless(rows, m)?;
    let seq = principal_sequence(&**m)?;
    let minors = match minors_of(m, &seq) {
        Ok(minors) => minors,
        Err(e) => {
            rows.push("principal minors uniformly dense".into(), None, e.to_string(), String::new(), None, false);
            return Ok(());
        }
    };
    for (i, minor) in minors.iter().enumerate() {
        let d = density(minor)?;
        let lambda = &seq.critical_values[i];
        let uniform = d.witness.len() == minor.ground_size();
        rows.push(
            format!("minor {} density equals its critical value, uniformly dense", i + 1),
            None,
            format_rational(&d.value),
            format_rational(lambda),
            Some(to_f64(&(&d.value - lambda))),
            d.value == *lambda && uniform,
        );
    }
    Ok(())
}

fn partition_approximation_rows(rows: &mut Rows, m: &SharedMatroid) -> Result<()> {
    let p = associated_partition(m)?;
    let c = constants::one_minus_inv_e();
    let constant = || Some(NamedConstant::new("1-1/e", c));
    let rp = expected_rank_profile(&p)?;
    let rm = expected_rank_profile(&**m)?;
    for (j, (a, b)) in rp.iter().zip(&rm).enumerate() {
        rows.at_least(format!("E[r_P(A_{})] >= (1-1/e) E[r_M(A_{})]", j + 1, j + 1), constant(), a, &(c * b));
    }
    for (wname, w) in weights_for(m.ground_size())? {
        let op = rank_formula(&rp, &w)?;
        let om = rank_formula(&rm, &w)?;
        rows.at_least(format!("E[w(OPT_P)] >= (1-1/e) E[w(OPT_M)], weights {wname}"), constant(), &op, &(c * om));
    }
    Ok(())
}

fn threshold_bound_rows(rows: &mut Rows, m: &SharedMatroid) -> Result<()> {
    if !is_uniformly_dense(&**m)? {
        return Err(Error::InvalidInput(format!("{} is not uniformly dense", rows.instance)));
    }
    let alg = ThresholdAlgorithm::for_matroid(&**m, None)?;
    let profile = inclusion_profile(&**m, &alg)?;
    let r = full_rank(&**m);
    let c = constants::inv_two_e();
    for (wname, w) in weights_for(m.ground_size())? {
        let e = profile.expectation(&w)?;
        rows.at_least(
            format!("E[w(ALG)] >= 1/(2e) (w_1 + ... + w_{r}), weights {wname}"),
            Some(NamedConstant::new("1/(2e)", c)),
            &e.alg,
            &(c * w.top_sum(r)),
        );
    }
    Ok(())
}

fn uniform_selection_rows(rows: &mut Rows, m: &SharedMatroid, opts: &SuiteOptions) -> Result<()> {
    let d = convex_decomposition(&**m)?;
    let identity = d.verify(&**m);
    rows.push(
        format!("decomposition of the 1/gamma point, {} terms", d.terms.len()),
        Some(NamedConstant::new("gamma(M)", &d.gamma)),
        identity.as_ref().err().map(|e| e.to_string()).unwrap_or_else(|| "exact".into()),
        String::new(),
        None,
        identity.is_ok(),
    );
    let alg = LowDensityAlgorithm::new(m.clone(), false)?;
    let n = m.ground_size();
    let w = weight_generator("equal", n, 0)?;
    let outcomes = run_trials(&**m, &w, &alg, opts.seed, opts.trials)?;
    let mut counts = vec![0u64; n];
    for o in &outcomes {
        for &e in &o.accepted {
            counts[e] += 1;
        }
    }
    let q = Rational::one() / &d.gamma;
    let qf = to_f64(&q);
    let trials = opts.trials as f64;
    let stderr = (qf * (1.0 - qf) / trials).sqrt();
    for (e, &c) in counts.iter().enumerate() {
        let freq = c as f64 / trials;
        let diff = (freq - qf).abs();
        rows.push(
            format!("element {e} selection frequency within 3 stderr ({:.2e}) of 1/gamma", 3.0 * stderr),
            Some(NamedConstant::new("1/gamma(M)", &q)),
            freq.to_string(),
            format_rational(&q),
            Some(3.0 * stderr - diff),
            diff <= 3.0 * stderr,
        );
    }
    Ok(())
}

fn density_cocircuit_rows(rows: &mut Rows, m: &SharedMatroid) -> Result<()> {
    require_loopless(rows, m)?;
    let gamma = density(&**m)?.value;
    let c = c_star(&**m)?;
    rows.at_least(
        "gamma(M) <= c*(M)".into(),
        Some(NamedConstant::new("gamma(M)", &gamma)),
        &int(c as i64),
        &gamma,
    );
    Ok(())
}

/// Runs `suite` on `instances` (or its default fixtures).
pub fn run_suite(
    suite: &str,
    instances: Option<Vec<(String, Instance)>>,
    opts: &SuiteOptions,
) -> Result<SuiteReport> {
    if !SUITES.iter().any(|(s, _)| *s == suite) {
        return Err(Error::InvalidInput(format!(
            "unknown suite {suite:?}; known: {}",
            SUITES.iter().map(|s| s.0).collect::<Vec<_>>().join(", ")
        )));
    }
    let instances = instances.unwrap_or_else(|| default_instances(suite));
    let mut checks = Vec::new();
    for (name, instance) in instances {
        let m = instance.oracle();
        let mut rows = Rows::new(&name);
        match suite {
            "rank-formula" => rank_formula_rows(&mut rows, &m)?,
            "greedy-selection" => greedy_selection_rows(&mut rows, &m, opts)?,
            "principal-structure" => principal_structure_rows(&mut rows, &m)?,
            "minor-density" => minor_density_rows(&mut rows, &m)?,
            "partition-approximation" => partition_approximation_rows(&mut rows, &m)?,
            "threshold-bound" => threshold_bound_rows(&mut rows, &m)?,
            "uniform-selection" => uniform_selection_rows(&mut rows, &m, opts)?,
            "density-cocircuit" => density_cocircuit_rows(&mut rows, &m)?,
            _ => unreachable!("suite validated above"),
        }
        checks.extend(rows.rows);
    }
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite: suite.to_string(),
        passed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(name: &str) -> Option<Vec<(String, Instance)>> {
        Some(named(&[name]))
    }

    #[test]
    fn rank_formula_on_the_triangle() {
        let r = run_suite("rank-formula", one("triangle"), &SuiteOptions::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.checks.len(), 3);
    }

    #[test]
    fn minor_density_of_triangle_with_pendant() {
        let r = run_suite("minor-density", one("triangle-pendant"), &SuiteOptions::default()).unwrap();
        assert!(r.passed);
        let measured: Vec<&str> = r.checks.iter().map(|c| c.measured.as_str()).collect();
        assert_eq!(measured, ["3/2", "1"]);
    }

    #[test]
    fn partition_approximation_on_a_direct_sum() {
        let r = run_suite("partition-approximation", one("u1-3+free-2"), &SuiteOptions::default()).unwrap();
        assert!(r.passed);
        assert!(r.checks.iter().all(|c| c.constant.as_ref().unwrap().name == "1-1/e"));
    }

    #[test]
    fn unknown_suite_and_unsuitable_instances() {
        assert!(run_suite("nope", None, &SuiteOptions::default()).is_err());
        assert!(run_suite("greedy-selection", one("triangle-pendant"), &SuiteOptions::default()).is_err());
    }

    #[test]
    fn free_matroid_elements_are_always_selected() {
        let opts = SuiteOptions { trials: 200, seed: 1 };
        let r = run_suite("uniform-selection", one("free-3"), &opts).unwrap();
        assert!(r.passed);
        assert!(r.checks.iter().skip(1).all(|c| c.measured == "1"));
    }
}
