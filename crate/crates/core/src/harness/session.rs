//! The comparison-only session an online algorithm runs inside.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::random::{Draw, MonteCarlo, Randomness, TrialRandomness};
use super::weights::AdversaryWeights;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Handle to a revealed element. It names the element and its arrival
/// position; its weight can only be compared through a [`RevealContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    element: usize,
    arrival: usize,
    session: u64,
}

impl Token {
    pub fn element(&self) -> usize {
        self.element
    }

    /// Zero-based position in the arrival order.
    pub fn arrival(&self) -> usize {
        self.arrival
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// What an algorithm learns before the first arrival.
pub struct StartInfo<'a> {
    pub n: usize,
    pub matroid: &'a dyn Matroid,
}

/// An online algorithm for one trial. Decisions are irrevocable: the session
/// owns the accepted set and offers no way to remove from it.
pub trait OnlineAlgorithm {
    fn start(&mut self, info: &StartInfo<'_>, rng: &mut dyn Randomness) -> Result<()>;

    fn reveal(
        &mut self,
        token: Token,
        ctx: &mut RevealContext<'_>,
        rng: &mut dyn Randomness,
    ) -> Result<Decision>;
}

/// A configured algorithm that spawns fresh per-trial instances. Expensive
/// preparation (principal sequences, decompositions) happens once, before
/// any trial, and is shared by every instance.
pub trait Strategy: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_>;

    /// Ground size the strategy was prepared for, if it depends on one.
    fn prepared_for(&self) -> Option<usize> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub left: usize,
    pub right: usize,
    pub heavier: usize,
}

/// Every comparison made in a session is counted; with recording on, each
/// one is kept for audit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ComparisonLog {
    pub count: u64,
    pub entries: Option<Vec<Comparison>>,
}

/// The algorithm's view of the session at one arrival.
pub struct RevealContext<'a> {
    session: u64,
    keys: &'a [u32],
    matroid: &'a dyn Matroid,
    seen: &'a [Token],
    accepted: &'a [usize],
    log: &'a mut ComparisonLog,
}

impl RevealContext<'_> {
    fn check(&self, t: Token) {
        assert_eq!(t.session, self.session, "token from another session");
    }

    /// Strict total order on revealed elements; equal weights are ordered by
    /// the session's tie-break permutation.
    pub fn compare(&mut self, a: Token, b: Token) -> Ordering {
        self.check(a);
        self.check(b);
        let ord = self.keys[a.element].cmp(&self.keys[b.element]);
        self.log.count += 1;
        if let Some(entries) = &mut self.log.entries {
            entries.push(Comparison {
                left: a.element,
                right: b.element,
                heavier: if ord == Ordering::Less { b.element } else { a.element },
            });
        }
        ord
    }

    pub fn heavier(&mut self, a: Token, b: Token) -> bool {
        self.compare(a, b) == Ordering::Greater
    }

    pub fn sort_heaviest_first(&mut self, tokens: &mut [Token]) {
        tokens.sort_by(|a, b| self.compare(*b, *a));
    }

    /// Tokens revealed so far, in arrival order, including the current one.
    pub fn seen(&self) -> &[Token] {
        self.seen
    }

    pub fn accepted(&self) -> &[usize] {
        self.accepted
    }

    /// Independence test restricted to revealed elements.
    pub fn is_independent(&self, tokens: &[Token]) -> bool {
        tokens.iter().for_each(|t| self.check(*t));
        let set: Vec<usize> = tokens.iter().map(Token::element).collect();
        self.matroid.is_independent(&set)
    }

    /// Whether accepting `token` keeps the accepted set independent.
    pub fn can_accept(&self, token: Token) -> bool {
        self.check(token);
        let mut set = self.accepted.to_vec();
        set.push(token.element);
        self.matroid.is_independent(&set)
    }

    pub fn comparisons(&self) -> u64 {
        self.log.count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionRecord {
    pub element: usize,
    pub accepted: bool,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct SessionOutcome {
    pub accepted: Vec<usize>,
    pub decisions: Vec<DecisionRecord>,
    pub log: ComparisonLog,
}

/// Runs one session. `keys[e]` is the hidden rank of element `e` (larger is
/// heavier) and `arrival` the order in which elements are revealed.
pub(crate) fn run_session(
    m: &dyn Matroid,
    keys: &[u32],
    arrival: &[usize],
    strategy: &dyn Strategy,
    rng: &mut dyn Randomness,
    session: u64,
    record: bool,
) -> Result<SessionOutcome> {
    let n = m.ground_size();
    let mut alg = strategy.spawn();
    alg.start(&StartInfo { n, matroid: m }, rng)?;
    let mut out = SessionOutcome {
        log: ComparisonLog {
            count: 0,
            entries: record.then(Vec::new),
        },
        ..SessionOutcome::default()
    };
    let mut seen = Vec::with_capacity(n);
    for (position, &element) in arrival.iter().enumerate() {
        let token = Token {
            element,
            arrival: position,
            session,
        };
        seen.push(token);
        let mut ctx = RevealContext {
            session,
            keys,
            matroid: m,
            seen: &seen,
            accepted: &out.accepted,
            log: &mut out.log,
        };
        let decision = alg.reveal(token, &mut ctx, rng)?;
        let accept = decision == Decision::Accept;
        if accept {
            out.accepted.push(element);
            if !m.is_independent(&out.accepted) {
                return Err(Error::ContractViolation {
                    algorithm: strategy.name(),
                    element,
                });
            }
        }
        if record {
            out.decisions.push(DecisionRecord { element, accepted: accept });
        }
    }
    Ok(out)
}

/// Hidden ranks from the assignment and tie-break: heavier weight first,
/// equal weights ordered by larger `tau`.
pub fn order_keys(weights: &AdversaryWeights, r: &TrialRandomness) -> Vec<u32> {
    let n = weights.len();
    let mut by_weight: Vec<usize> = (0..n).collect();
    let w = weights.exact();
    by_weight.sort_by(|&i, &j| {
        w[i].cmp(&w[j])
            .then(r.tau[r.sigma[i]].cmp(&r.tau[r.sigma[j]]))
    });
    let mut keys = vec![0u32; n];
    for (k, &i) in by_weight.iter().enumerate() {
        keys[r.sigma[i]] = k as u32;
    }
    keys
}

/// Greedy over elements in decreasing key order.
pub fn greedy_by_keys(m: &dyn Matroid, keys: &[u32]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|a, b| keys[*b].cmp(&keys[*a]));
    crate::matroid::greedy_scan(m, &order)
}

/// Everything needed to replay and audit one trial, as one JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub seed: u64,
    pub trial: u64,
    pub algorithm: String,
    pub sigma: Vec<usize>,
    pub pi: Vec<usize>,
    pub tau: Vec<usize>,
    pub weights: Vec<String>,
    pub draws: Vec<Draw>,
    pub decisions: Vec<DecisionRecord>,
    pub comparisons: ComparisonLog,
    pub accepted: Vec<usize>,
}

impl Transcript {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial: u64,
    pub accepted: Vec<usize>,
    pub accepted_weight: f64,
    /// Optimum for this trial's assignment.
    pub opt: Vec<usize>,
    pub opt_weight: f64,
    pub comparisons: u64,
    pub transcript: Option<Transcript>,
}

/// Element weights under the assignment: `w(sigma[i]) = w_i`.
fn element_weights(weights: &AdversaryWeights, sigma: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; sigma.len()];
    for (i, &e) in sigma.iter().enumerate() {
        out[e] = weights.floats()[i];
    }
    out
}

pub fn run_trial(
    m: &dyn Matroid,
    weights: &AdversaryWeights,
    strategy: &dyn Strategy,
    seed: u64,
    trial: u64,
    record: bool,
) -> Result<TrialOutcome> {
    let n = m.ground_size();
    if weights.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} weights for a ground set of {n} elements",
            weights.len()
        )));
    }
    if let Some(prepared) = strategy.prepared_for() {
        if prepared != n {
            return Err(Error::InvalidInput(format!(
                "strategy prepared for {prepared} elements, matroid has {n}"
            )));
        }
    }
    let r = TrialRandomness::derive(seed, trial, n);
    let keys = order_keys(weights, &r);
    let alg_rng = TrialRandomness::algorithm_rng(seed, trial);
    let mut rng = if record {
        MonteCarlo::recording(alg_rng)
    } else {
        MonteCarlo::new(alg_rng)
    };
    let outcome = run_session(m, &keys, &r.pi, strategy, &mut rng, trial, record)?;
    if !m.is_independent(&outcome.accepted) {
        return Err(Error::ContractViolation {
            algorithm: strategy.name(),
            element: outcome.accepted.last().copied().unwrap_or(0),
        });
    }
    let ew = element_weights(weights, &r.sigma);
    let opt = greedy_by_keys(m, &keys);
    let accepted_weight = outcome.accepted.iter().map(|&e| ew[e]).sum();
    let opt_weight = opt.iter().map(|&e| ew[e]).sum();
    let transcript = record.then(|| Transcript {
        seed,
        trial,
        algorithm: strategy.name(),
        sigma: r.sigma.clone(),
        pi: r.pi.clone(),
        tau: r.tau.clone(),
        weights: weights.to_strings(),
        draws: rng.take_log(),
        decisions: outcome.decisions.clone(),
        comparisons: outcome.log.clone(),
        accepted: outcome.accepted.clone(),
    });
    Ok(TrialOutcome {
        trial,
        accepted: outcome.accepted,
        accepted_weight,
        opt,
        opt_weight,
        comparisons: outcome.log.count,
        transcript,
    })
}

/// Trials `0..trials` in parallel, returned in trial order.
pub fn run_trials(
    m: &dyn Matroid,
    weights: &AdversaryWeights,
    strategy: &dyn Strategy,
    seed: u64,
    trials: u64,
) -> Result<Vec<TrialOutcome>> {
    (0..trials)
        .into_par_iter()
        .map(|t| run_trial(m, weights, strategy, seed, t, false))
        .collect()
}
