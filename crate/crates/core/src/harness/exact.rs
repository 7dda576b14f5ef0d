//! Exact expectations by enumerating assignments, arrival orders and the
//! algorithm's internal choices.
//!
//! In exact mode the tie-break order is taken from the assignment itself
//! (weight index `i` outranks index `j > i`). Because the assignment is a
//! uniform permutation independent of the arrival order, equal weights are
//! still ordered uniformly at random, so the model is unchanged, and the
//! algorithm's behaviour no longer depends on the numeric weights. One
//! enumeration therefore yields, for every weight index `i`, the probability
//! that the element receiving `w_i` is accepted, and `E[w(ALG)]` for any
//! weight list is a dot product with those probabilities.
//!
//! Internal randomness is explored as a tree: an algorithm is re-run with a
//! script of earlier choices, each new choice point takes its first option,
//! and the deepest choice with options left is advanced. Binomial draws keep
//! their probability symbolic as `p^a (1 - p)^b`, so results are polynomials
//! in each distinct `p` that are evaluated exactly at its rational value.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::random::Randomness;
use super::session::{greedy_by_keys, run_session, Strategy};
use super::weights::AdversaryWeights;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rational::{binomial, factorial, Rational};

/// Largest ground set enumerated by default (`n!^2` assignment/arrival pairs).
pub const DEFAULT_EXACT_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub max_n: usize,
    /// Cap on internal-randomness paths for a single session.
    pub max_paths: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_EXACT_BOUND,
            max_paths: 1_000_000,
        }
    }
}

/// `prod_k p_k^a_k (1 - p_k)^b_k`, sorted by `p_k`.
type Monomial = Vec<(Rational, u32, u32)>;

fn mul_into(mono: &mut Monomial, p: &Rational, a: u32, b: u32) {
    match mono.binary_search_by(|(q, _, _)| q.cmp(p)) {
        Ok(i) => {
            mono[i].1 += a;
            mono[i].2 += b;
        }
        Err(i) => mono.insert(i, (p.clone(), a, b)),
    }
}

/// A polynomial in the binomial parameters with exact coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ProbPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { terms }
    }

    fn add_term(&mut self, mono: &Monomial, c: Rational) {
        let entry = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(mono);
        }
    }

    pub fn evaluate(&self) -> Rational {
        self.terms
            .iter()
            .map(|(mono, c)| {
                mono.iter().fold(c.clone(), |acc, (p, a, b)| {
                    let q = Rational::one() - p;
                    acc * num_traits::pow(p.clone(), *a as usize) * num_traits::pow(q, *b as usize)
                })
            })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
}

/// Path probability factor other than the binomial parameters. Kept as a
/// reduced machine fraction while it fits, which is the common case.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Coef {
    Small(u128, u128),
    Big(Rational),
}

impl Coef {
    fn one() -> Self {
        Coef::Small(1, 1)
    }

    fn to_rational(&self) -> Rational {
        match self {
            Coef::Small(a, b) => Rational::new((*a).into(), (*b).into()),
            Coef::Big(r) => r.clone(),
        }
    }

    fn mul_frac(&mut self, num: u128, den: u128) {
        if let Coef::Small(a, b) = *self {
            let g1 = num_integer::gcd(num, b);
            let g2 = num_integer::gcd(a, den);
            if let (Some(x), Some(y)) = ((a / g2).checked_mul(num / g1), (b / g1).checked_mul(den / g2)) {
                *self = Coef::Small(x, y);
                return;
            }
        }
        self.mul_rational(&Rational::new(num.into(), den.into()));
    }

    fn mul_rational(&mut self, r: &Rational) {
        let product = self.to_rational() * r;
        *self = Coef::Big(product);
    }
}

/// Exponents per interned binomial parameter, sorted by parameter id.
type PathMono = Vec<(u16, u32, u32)>;

/// Distinct binomial parameters seen so far; ids index this list.
#[derive(Debug, Default, Clone)]
struct Params(Vec<Rational>);

impl Params {
    fn intern(&mut self, p: &Rational) -> u16 {
        match self.0.iter().position(|q| q == p) {
            Some(i) => i as u16,
            None => {
                self.0.push(p.clone());
                (self.0.len() - 1) as u16
            }
        }
    }

    fn monomial(&self, mono: &PathMono) -> Monomial {
        let mut out = Monomial::new();
        for &(id, a, b) in mono {
            mul_into(&mut out, &self.0[id as usize], a, b);
        }
        out
    }
}

/// Replays a script of choices and extends it with first options.
struct Scripted<'a> {
    script: &'a [usize],
    trace: Vec<(usize, usize)>,
    coef: Coef,
    mono: PathMono,
    params: &'a mut Params,
    unsupported: bool,
}

impl<'a> Scripted<'a> {
    fn new(script: &'a [usize], params: &'a mut Params) -> Self {
        Self {
            script,
            trace: Vec::new(),
            coef: Coef::one(),
            mono: Vec::new(),
            params,
            unsupported: false,
        }
    }

    fn choose(&mut self, options: usize) -> usize {
        let pos = self.trace.len();
        let taken = self.script.get(pos).copied().unwrap_or(0);
        self.trace.push((taken, options));
        taken
    }
}

fn small_binomial(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

impl Randomness for Scripted<'_> {
    fn binomial(&mut self, n: usize, p: &Rational) -> usize {
        let k = self.choose(n + 1);
        match small_binomial(n, k) {
            Some(c) => self.coef.mul_frac(c, 1),
            None => self.coef.mul_rational(&Rational::from_integer(binomial(n, k))),
        }
        let id = self.params.intern(p);
        let (a, b) = (k as u32, (n - k) as u32);
        match self.mono.binary_search_by_key(&id, |t| t.0) {
            Ok(i) => {
                self.mono[i].1 += a;
                self.mono[i].2 += b;
            }
            Err(i) => self.mono.insert(i, (id, a, b)),
        }
        k
    }

    fn uniform_index(&mut self, len: usize) -> usize {
        assert!(len > 0, "uniform_index over an empty range");
        let i = self.choose(len);
        self.coef.mul_frac(1, len as u128);
        i
    }

    fn categorical(&mut self, weights: &[Rational]) -> usize {
        let positive: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > Rational::zero()).collect();
        assert!(!positive.is_empty(), "categorical draw with no positive weight");
        let total: Rational = positive.iter().map(|&i| &weights[i]).sum();
        let i = positive[self.choose(positive.len())];
        self.coef.mul_rational(&(&weights[i] / total));
        i
    }

    fn uniform_real(&mut self) -> Result<f64> {
        self.unsupported = true;
        Err(Error::Unsupported(
            "continuous random draws cannot be enumerated exactly".into(),
        ))
    }
}

/// Runs `session` once per path of the choice tree.
fn for_each_path<T>(
    max_paths: usize,
    params: &mut Params,
    mut session: impl FnMut(&mut dyn Randomness) -> Result<T>,
    mut visit: impl FnMut(&Coef, &PathMono, &Params, T),
) -> Result<()> {
    let mut script: Vec<usize> = Vec::new();
    let mut paths = 0usize;
    loop {
        let mut s = Scripted::new(&script, params);
        let out = session(&mut s);
        if s.unsupported {
            return Err(Error::Unsupported(
                "algorithm draws a continuous random variable; exact enumeration is impossible".into(),
            ));
        }
        visit(&s.coef, &s.mono, s.params, out?);
        paths += 1;
        if paths > max_paths {
            return Err(Error::SizeBound {
                what: "internal randomness paths",
                size: paths,
                bound: max_paths,
            });
        }
        let mut trace = s.trace;
        loop {
            match trace.pop() {
                None => return Ok(()),
                Some((taken, options)) if taken + 1 < options => {
                    script.clear();
                    script.extend(trace.iter().map(|t| t.0));
                    script.push(taken + 1);
                    break;
                }
                Some(_) => {}
            }
        }
    }
}

/// Acceptance probability of the element holding each weight index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionProfile {
    pub n: usize,
    /// Per weight index, as polynomials in the algorithm's binomial parameters.
    pub alg: Vec<ProbPoly>,
    /// Per weight index, probability that it is in the optimum.
    pub opt: Vec<Rational>,
    /// Sessions run, summed over all enumerated paths.
    pub sessions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactExpectation {
    pub alg: Rational,
    pub opt: Rational,
}

impl ExactExpectation {
    /// `E[w(OPT)] / E[w(ALG)]`, or `None` when the algorithm gets nothing.
    pub fn ratio(&self) -> Option<Rational> {
        (!self.alg.is_zero()).then(|| &self.opt / &self.alg)
    }
}

impl InclusionProfile {
    pub fn alg_probabilities(&self) -> Vec<Rational> {
        self.alg.iter().map(ProbPoly::evaluate).collect()
    }

    pub fn expectation(&self, weights: &AdversaryWeights) -> Result<ExactExpectation> {
        if weights.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "{} weights for a profile over {} elements",
                weights.len(),
                self.n
            )));
        }
        let dot = |probs: &[Rational]| -> Rational {
            probs.iter().zip(weights.exact()).map(|(p, w)| p * w).sum()
        };
        Ok(ExactExpectation {
            alg: dot(&self.alg_probabilities()),
            opt: dot(&self.opt),
        })
    }
}

/// Path weight and accepted weight indices, accumulated as integer counts.
#[derive(Default)]
struct Tally {
    params: Params,
    counts: HashMap<(Coef, PathMono), Vec<u64>>,
    sessions: u64,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        let remap: Vec<u16> = other.params.0.iter().map(|p| self.params.intern(p)).collect();
        for ((coef, mono), v) in other.counts {
            let mut mono: PathMono = mono.into_iter().map(|(id, a, b)| (remap[id as usize], a, b)).collect();
            mono.sort_unstable_by_key(|t| t.0);
            let slot = self.counts.entry((coef, mono)).or_insert_with(|| vec![0; v.len()]);
            slot.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        }
        self.sessions += other.sessions;
    }

    fn into_polys(self, n: usize, normalizer: &Rational) -> Vec<ProbPoly> {
        let mut polys = vec![ProbPoly::default(); n];
        for ((coef, mono), counts) in self.counts {
            let coef = coef.to_rational() / normalizer;
            let mono = self.params.monomial(&mono);
            for (i, c) in counts.into_iter().enumerate() {
                if c > 0 {
                    polys[i].add_term(&mono, &coef * Rational::from_integer(c.into()));
                }
            }
        }
        polys
    }
}

fn check_size(m: &dyn Matroid, config: &ExactConfig) -> Result<usize> {
    let n = m.ground_size();
    if n > config.max_n {
        return Err(Error::SizeBound {
            what: "exact enumeration",
            size: n,
            bound: config.max_n,
        });
    }
    Ok(n)
}

/// Keys for a fixed assignment: the element with weight index `i` has key `n - 1 - i`.
fn keys_of(sigma: &[usize]) -> Vec<u32> {
    let n = sigma.len();
    let mut keys = vec![0u32; n];
    for (i, &e) in sigma.iter().enumerate() {
        keys[e] = (n - 1 - i) as u32;
    }
    keys
}

/// Enumerates every arrival order (and internal choice) for one assignment.
fn tally_assignment(
    m: &dyn Matroid,
    strategy: &dyn Strategy,
    sigma: &[usize],
    config: &ExactConfig,
) -> Result<Tally> {
    let n = sigma.len();
    let keys = keys_of(sigma);
    let mut index_of = vec![0usize; n];
    for (i, &e) in sigma.iter().enumerate() {
        index_of[e] = i;
    }
    let Tally {
        mut params,
        mut counts,
        mut sessions,
    } = Tally::default();
    for pi in (0..n).permutations(n) {
        let mut failure = None;
        for_each_path(
            config.max_paths,
            &mut params,
            |rng| run_session(m, &keys, &pi, strategy, rng, 0, false),
            |coef, mono, _, outcome| {
                if !m.is_independent(&outcome.accepted) {
                    failure = Some(outcome.accepted.clone());
                }
                sessions += 1;
                let slot = counts.entry((coef.clone(), mono.clone())).or_insert_with(|| vec![0; n]);
                for e in &outcome.accepted {
                    slot[index_of[*e]] += 1;
                }
            },
        )?;
        if let Some(set) = failure {
            return Err(Error::Internal(format!("dependent output {set:?}")));
        }
    }
    Ok(Tally {
        params,
        counts,
        sessions,
    })
}

fn opt_indices(m: &dyn Matroid, sigma: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut index_of = vec![0usize; n];
    for (i, &e) in sigma.iter().enumerate() {
        index_of[e] = i;
    }
    greedy_by_keys(m, &keys_of(sigma))
        .into_iter()
        .map(|e| index_of[e])
        .collect()
}

/// Random-assignment model: averages over every assignment and arrival order.
pub fn inclusion_profile(m: &dyn Matroid, strategy: &dyn Strategy) -> Result<InclusionProfile> {
    inclusion_profile_with(m, strategy, &ExactConfig::default())
}

pub fn inclusion_profile_with(
    m: &dyn Matroid,
    strategy: &dyn Strategy,
    config: &ExactConfig,
) -> Result<InclusionProfile> {
    let n = check_size(m, config)?;
    let sigmas: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let parts: Vec<Tally> = sigmas
        .par_iter()
        .map(|sigma| tally_assignment(m, strategy, sigma, config))
        .collect::<Result<_>>()?;
    let mut tally = Tally::default();
    for part in parts {
        tally.merge(part);
    }
    let orders = Rational::from_integer(factorial(n));
    let sessions = tally.sessions;
    let alg = tally.into_polys(n, &(&orders * &orders));
    Ok(InclusionProfile {
        n,
        alg,
        opt: opt_inclusion(m, &sigmas, &orders),
        sessions,
    })
}

fn opt_inclusion(m: &dyn Matroid, sigmas: &[Vec<usize>], normalizer: &Rational) -> Vec<Rational> {
    let n = m.ground_size();
    let mut counts = vec![0u64; n];
    for sigma in sigmas {
        for i in opt_indices(m, sigma) {
            counts[i] += 1;
        }
    }
    counts
        .into_iter()
        .map(|c| Rational::from_integer(c.into()) / normalizer)
        .collect()
}

/// Zero-information model: the assignment `sigma` is fixed by the adversary
/// and only arrival orders (and internal choices) are averaged.
pub fn zero_info_profile(
    m: &dyn Matroid,
    strategy: &dyn Strategy,
    sigma: &[usize],
) -> Result<InclusionProfile> {
    let config = ExactConfig::default();
    let n = check_size(m, &config)?;
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation of 0..{n}")));
    }
    let tally = tally_assignment(m, strategy, sigma, &config)?;
    let orders = Rational::from_integer(factorial(n));
    let sessions = tally.sessions;
    let alg = tally.into_polys(n, &orders);
    Ok(InclusionProfile {
        n,
        alg,
        opt: opt_inclusion(m, &[sigma.to_vec()], &Rational::one()),
        sessions,
    })
}

/// `(E[w(ALG)], E[w(OPT)])` in the random-assignment model.
pub fn exact_expectation(
    m: &dyn Matroid,
    weights: &AdversaryWeights,
    strategy: &dyn Strategy,
) -> Result<ExactExpectation> {
    inclusion_profile(m, strategy)?.expectation(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn choice_tree_covers_all_paths() {
        let mut total = Rational::zero();
        let mut seen = Vec::new();
        for_each_path(
            100,
            &mut Params::default(),
            |rng| {
                let a = rng.uniform_index(3);
                let b = if a == 0 { rng.binomial(2, &ratio(1, 3)) } else { 9 };
                Ok((a, b))
            },
            |coef, mono, params, out| {
                let poly = {
                    let mut p = ProbPoly::default();
                    p.add_term(&params.monomial(mono), coef.to_rational());
                    p
                };
                total += poly.evaluate();
                seen.push(out);
            },
        )
        .unwrap();
        assert_eq!(total, int(1));
        assert_eq!(seen, vec![(0, 0), (0, 1), (0, 2), (1, 9), (2, 9)]);
    }

    #[test]
    fn continuous_draws_are_unsupported() {
        let r = for_each_path(10, &mut Params::default(), |rng| rng.uniform_real(), |_, _, _, _| {});
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn categorical_paths_skip_zero_weights() {
        let mut probs = Vec::new();
        for_each_path(
            10,
            &mut Params::default(),
            |rng| Ok(rng.categorical(&[ratio(1, 4), int(0), ratio(3, 4)])),
            |coef, _, _, i| probs.push((i, coef.to_rational())),
        )
        .unwrap();
        assert_eq!(probs, vec![(0, ratio(1, 4)), (2, ratio(3, 4))]);
    }
}
