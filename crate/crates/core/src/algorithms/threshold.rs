//! The threshold-set algorithm for uniformly dense matroids and its
//! extension to general matroids through principal minors.

use rand::seq::index::sample;
use rand::Rng;

use crate::constants::inv_sqrt_e;
use crate::error::{Error, Result};
use crate::harness::{
    substream, AdversaryWeights, Decision, OnlineAlgorithm, Randomness, RevealContext, StartInfo,
    Strategy, Token,
};
use crate::matroid::{full_rank, non_loops, Matroid, MinorView, SharedMatroid};
use crate::principal::{density, principal_sequence, PrincipalSequence};
use crate::rational::{format_rational, int, to_f64, Rational};

#[derive(Debug, Clone, Copy)]
enum Slot {
    /// Lighter than every real element.
    Dummy,
    Real { token: Token, sampled: bool },
}

/// `T` holds the `r` heaviest arrivals so far, heaviest first, padded with
/// dummies at the end. The sample is the first `m ~ Bin(n, p)` arrivals.
#[derive(Debug, Clone)]
pub(crate) struct ThresholdCore {
    rank: usize,
    sample_size: usize,
    seen: usize,
    top: Vec<Slot>,
    candidates: usize,
}

impl ThresholdCore {
    pub(crate) fn start(rank: usize, n: usize, p: &Rational, rng: &mut dyn Randomness) -> Self {
        Self {
            rank,
            sample_size: rng.binomial(n, p),
            seen: 0,
            top: vec![Slot::Dummy; rank],
            candidates: 0,
        }
    }

    /// Updates `T` and reports whether `token` is a candidate: not sampled,
    /// enters `T`, and pushes out a sampled or dummy member.
    pub(crate) fn offer(&mut self, token: Token, ctx: &mut RevealContext<'_>) -> bool {
        let sampled = self.seen < self.sample_size;
        self.seen += 1;
        let Some(&last) = self.top.last() else {
            return false;
        };
        let enters = match last {
            Slot::Dummy => true,
            Slot::Real { token: t, .. } => ctx.heavier(token, t),
        };
        if !enters {
            return false;
        }
        self.top.pop();
        let reals = self.top.iter().take_while(|s| matches!(s, Slot::Real { .. })).count();
        let (mut lo, mut hi) = (0, reals);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let Slot::Real { token: t, .. } = self.top[mid] else { unreachable!() };
            if ctx.heavier(t, token) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        self.top.insert(lo, Slot::Real { token, sampled });
        let frees = match last {
            Slot::Dummy => true,
            Slot::Real { sampled, .. } => sampled,
        };
        let candidate = !sampled && frees;
        if candidate {
            self.candidates += 1;
        }
        candidate
    }

    fn check_accepted(&self, accepted: usize) -> Result<()> {
        if accepted > self.rank {
            return Err(Error::Internal(format!(
                "threshold algorithm accepted {accepted} elements with rank {}",
                self.rank
            )));
        }
        Ok(())
    }
}

/// The `2e`-competitive algorithm for uniformly dense matroids (with the
/// default `p = e^{-1/2}`). Usable on any matroid; the guarantee needs
/// uniform density.
#[derive(Debug, Clone)]
pub struct ThresholdAlgorithm {
    p: Rational,
    rank: usize,
}

impl ThresholdAlgorithm {
    pub fn new(p: Rational, rank: usize) -> Result<Self> {
        check_probability(&p)?;
        Ok(Self { p, rank })
    }

    pub fn for_matroid(m: &dyn Matroid, p: Option<Rational>) -> Result<Self> {
        Self::new(p.unwrap_or_else(|| inv_sqrt_e().clone()), full_rank(m))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }
}

pub(crate) fn check_probability(p: &Rational) -> Result<()> {
    if *p < int(0) || *p > int(1) {
        return Err(Error::InvalidInput(format!(
            "probability {} outside [0, 1]",
            format_rational(p)
        )));
    }
    Ok(())
}

impl Strategy for ThresholdAlgorithm {
    fn name(&self) -> String {
        "alg1".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(ThresholdRun { strategy: self, core: None, accepted: 0 })
    }
}

struct ThresholdRun<'a> {
    strategy: &'a ThresholdAlgorithm,
    core: Option<ThresholdCore>,
    accepted: usize,
}

impl OnlineAlgorithm for ThresholdRun<'_> {
    fn start(&mut self, info: &StartInfo<'_>, rng: &mut dyn Randomness) -> Result<()> {
        self.core = Some(ThresholdCore::start(self.strategy.rank, info.n, &self.strategy.p, rng));
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        let core = self.core.as_mut().expect("started");
        if core.offer(token, ctx) && ctx.can_accept(token) {
            self.accepted += 1;
            core.check_accepted(self.accepted)?;
            return Ok(Decision::Accept);
        }
        Ok(Decision::Reject)
    }
}

/// Output of the continuous-time offline simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct OfflineOutcome {
    pub accepted: Vec<usize>,
    pub accepted_weights: Vec<f64>,
    pub candidates: usize,
}

impl OfflineOutcome {
    pub fn weight(&self) -> f64 {
        self.accepted_weights.iter().sum()
    }
}

/// Offline simulation of the threshold algorithm: weights pick uniform
/// arrival times, those before `p` are sampled, later weights that enter the
/// top-`r` set by evicting a sampled or dummy weight become candidates, and
/// candidates receive distinct uniformly random elements and are filtered by
/// greedy in arrival order. Equal weights are ordered by list position.
pub fn alg1_offline_simulation(
    m: &dyn Matroid,
    p: f64,
    weights: &AdversaryWeights,
    seed: u64,
    trial: u64,
) -> Result<OfflineOutcome> {
    let n = m.ground_size();
    if weights.len() != n {
        return Err(Error::InvalidInput(format!("{} weights for {n} elements", weights.len())));
    }
    let r = full_rank(m);
    let mut rng = substream(seed, trial, 3);
    let times: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| times[a].total_cmp(&times[b]));

    // Weight indices: a smaller index is heavier. `None` is a dummy.
    let mut top: Vec<Option<(usize, bool)>> = vec![None; r];
    let mut candidates = Vec::new();
    for &i in &order {
        let sampled = times[i] < p;
        let Some(&last) = top.last() else { break };
        let enters = match last {
            None => true,
            Some((j, _)) => i < j,
        };
        if !enters {
            continue;
        }
        top.pop();
        let pos = top.iter().position(|s| s.map_or(true, |(j, _)| i < j)).unwrap_or(top.len());
        top.insert(pos, Some((i, sampled)));
        if !sampled && last.map_or(true, |(_, s)| s) {
            candidates.push(i);
        }
    }
    if candidates.len() > r {
        return Err(Error::Internal(format!("{} candidates exceed rank {r}", candidates.len())));
    }
    let elements = sample(&mut rng, n, candidates.len()).into_vec();
    let mut accepted = Vec::new();
    let mut accepted_weights = Vec::new();
    for (&i, &e) in candidates.iter().zip(&elements) {
        accepted.push(e);
        if m.is_independent(&accepted) {
            accepted_weights.push(weights.floats()[i]);
        } else {
            accepted.pop();
        }
    }
    Ok(OfflineOutcome {
        accepted,
        accepted_weights,
        candidates: candidates.len(),
    })
}

/// The `2e^2/(e-1)`-competitive algorithm for general matroids: loops are
/// discarded, and an independent threshold algorithm runs on each principal
/// minor of the rest, with independence tested in that minor.
#[derive(Debug, Clone)]
pub struct PrincipalMinorsAlgorithm {
    p: Rational,
    n: usize,
    sequence: PrincipalSequence,
    minors: Vec<MinorView>,
    ranks: Vec<usize>,
    /// `route[e] = (minor, local id)`; loops route nowhere.
    route: Vec<Option<(usize, usize)>>,
}

impl PrincipalMinorsAlgorithm {
    pub fn new(m: SharedMatroid, p: Option<Rational>) -> Result<Self> {
        let p = p.unwrap_or_else(|| inv_sqrt_e().clone());
        check_probability(&p)?;
        let n = m.ground_size();
        let keep = non_loops(&*m);
        let restricted = MinorView::restriction(m.clone(), &keep)?;
        let local = if keep.is_empty() {
            PrincipalSequence {
                sets: vec![Vec::new()],
                critical_values: Vec::new(),
                parts: Vec::new(),
                ranks: Vec::new(),
            }
        } else {
            principal_sequence(&restricted)?
        };
        let lift = |set: &[usize]| -> Vec<usize> { set.iter().map(|&x| keep[x]).collect() };
        let sequence = PrincipalSequence {
            sets: local.sets.iter().map(|s| lift(s)).collect(),
            critical_values: local.critical_values.clone(),
            parts: local.parts.iter().map(|s| lift(s)).collect(),
            ranks: local.ranks.clone(),
        };
        let mut minors = Vec::new();
        let mut route = vec![None; n];
        for i in 0..sequence.len() {
            let minor = MinorView::new(m.clone(), &sequence.sets[i], &sequence.parts[i])?;
            let d = density(&minor)?;
            if d.value != sequence.critical_values[i] || d.witness.len() != minor.ground_size() {
                return Err(Error::Internal(format!("principal minor {} is not uniformly dense", i + 1)));
            }
            for (local_id, &e) in minor.restricted().iter().enumerate() {
                route[e] = Some((i, local_id));
            }
            minors.push(minor);
        }
        Ok(Self {
            p,
            n,
            ranks: sequence.ranks.clone(),
            sequence,
            minors,
            route,
        })
    }

    pub fn sequence(&self) -> &PrincipalSequence {
        &self.sequence
    }

    pub fn minors(&self) -> &[MinorView] {
        &self.minors
    }

    /// Index of the principal minor holding `e`, or `None` for loops.
    pub fn minor_of(&self, e: usize) -> Option<usize> {
        self.route[e].map(|(i, _)| i)
    }
}

impl Strategy for PrincipalMinorsAlgorithm {
    fn name(&self) -> String {
        "alg2".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(MinorsRun { strategy: self, cores: Vec::new(), accepted: Vec::new() })
    }

    fn prepared_for(&self) -> Option<usize> {
        Some(self.n)
    }
}

struct MinorsRun<'a> {
    strategy: &'a PrincipalMinorsAlgorithm,
    cores: Vec<ThresholdCore>,
    accepted: Vec<Vec<usize>>,
}

impl OnlineAlgorithm for MinorsRun<'_> {
    fn start(&mut self, _: &StartInfo<'_>, rng: &mut dyn Randomness) -> Result<()> {
        let s = self.strategy;
        self.cores = s
            .minors
            .iter()
            .zip(&s.ranks)
            .map(|(minor, &r)| ThresholdCore::start(r, minor.ground_size(), &s.p, rng))
            .collect();
        self.accepted = vec![Vec::new(); s.minors.len()];
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        let Some((i, local)) = self.strategy.route[token.element()] else {
            return Ok(Decision::Reject);
        };
        if !self.cores[i].offer(token, ctx) {
            return Ok(Decision::Reject);
        }
        let mut trial = self.accepted[i].clone();
        trial.push(local);
        if !self.strategy.minors[i].is_independent(&trial) {
            return Ok(Decision::Reject);
        }
        self.accepted[i] = trial;
        self.cores[i].check_accepted(self.accepted[i].len())?;
        Ok(Decision::Accept)
    }
}

/// `-p^2 ln p` evaluated in floating point, for reporting.
pub fn threshold_guarantee(p: &Rational) -> f64 {
    let x = to_f64(p);
    -x * x * x.ln()
}
