//! Density, principal sequences and principal minors, matroid partitioning
//! and convex decompositions in the independence polytope.
//!
//! Everything here is exact: densities and critical values are rationals, and
//! set functions are minimized by exhaustive enumeration over a rank table.

mod cover;
mod decompose;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{
    elements_mask, full_rank, mask_elements, non_loops, require_loopless, Matroid, MinorView,
    SharedMatroid, Structure,
};
use crate::rational::{int, ratio, serde_str, Rational};
use crate::zoo::PartitionMatroid;

pub use cover::{partition_cover, three_cobase_cover, ThreeCobaseCover};
pub use decompose::{
    convex_decomposition, convex_decomposition_with, polytope_slack, ConvexDecomposition,
    DecompositionTerm, ParallelCopies,
};

/// Default largest ground set enumerated exhaustively.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Hard ceiling; rank tables are indexed by 64-bit masks held in memory.
const MAX_ENUMERATION_BOUND: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

/// Rank of every subset of a small ground set, indexed by bitmask.
#[derive(Debug, Clone)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    pub fn build<M: Matroid + ?Sized>(m: &M, limits: &Limits) -> Result<Self> {
        let n = m.ground_size();
        let bound = limits.enumeration_bound.min(MAX_ENUMERATION_BOUND);
        if n > bound {
            return Err(Error::SizeBound {
                what: "subset enumeration",
                size: n,
                bound,
            });
        }
        let ranks = (0..1u64 << n)
            .into_par_iter()
            .map(|mask| m.rank(&mask_elements(mask)) as u8)
            .collect();
        Ok(Self { n, ranks })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self, mask: u64) -> usize {
        self.ranks[mask as usize] as usize
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

/// Calls `f` on every submask of `mask`, including `0` and `mask` itself.
fn for_each_submask(mask: u64, mut f: impl FnMut(u64)) {
    let mut sub = mask;
    loop {
        f(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
}

/// `gamma(M) = max |X| / r(X)` over nonempty `X`, with the largest maximizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Density {
    #[serde(with = "serde_str")]
    pub value: Rational,
    pub witness: Vec<usize>,
}

/// Densest subset of `ground` in `M / contracted`, preferring the largest
/// among ratio maximizers. Returns (|X|, r(X), X).
fn densest_in(table: &RankTable, contracted: u64, ground: u64) -> Result<(usize, usize, u64)> {
    let base = table.rank(contracted);
    let mut best: Option<(usize, usize, u64)> = None;
    let mut bad = None;
    for_each_submask(ground, |x| {
        if x == 0 {
            return;
        }
        let size = x.count_ones() as usize;
        let r = table.rank(x | contracted) - base;
        if r == 0 {
            bad = Some(x);
            return;
        }
        let better = match best {
            None => true,
            // size / r  vs  bs / br, then larger size wins ties
            Some((bs, br, _)) => size * br > bs * r || (size * br == bs * r && size > bs),
        };
        if better {
            best = Some((size, r, x));
        }
    });
    if let Some(x) = bad {
        return Err(Error::HasLoops(mask_elements(x)));
    }
    best.ok_or_else(|| Error::InvalidInput("density of an empty ground set".into()))
}

fn partition_parts(m: &dyn Matroid) -> Option<Vec<(Vec<usize>, usize)>> {
    match m.structure() {
        Structure::Uniform { rank } => Some(vec![((0..m.ground_size()).collect(), rank)]),
        Structure::Partition { parts } => Some(parts),
        Structure::General => None,
    }
}

pub fn density<M: Matroid + ?Sized>(m: &M) -> Result<Density> {
    density_with(m, &Limits::default())
}

pub fn density_with<M: Matroid + ?Sized>(m: &M, limits: &Limits) -> Result<Density> {
    require_loopless(m)?;
    if m.ground_size() == 0 {
        return Err(Error::InvalidInput("density of an empty ground set".into()));
    }
    let dynm: &dyn Matroid = &DynRef(m);
    if let Some(parts) = partition_parts(dynm) {
        let parts: Vec<_> = parts.into_iter().filter(|(p, _)| !p.is_empty()).collect();
        let best = parts
            .iter()
            .map(|(p, cap)| ratio(p.len() as i64, *cap as i64))
            .max()
            .expect("nonempty ground set");
        let mut witness: Vec<usize> = parts
            .iter()
            .filter(|(p, cap)| ratio(p.len() as i64, *cap as i64) == best)
            .flat_map(|(p, _)| p.iter().copied())
            .collect();
        witness.sort_unstable();
        return Ok(Density {
            value: best,
            witness,
        });
    }
    let table = RankTable::build(m, limits)?;
    let (size, r, mask) = densest_in(&table, 0, table.full_mask())?;
    Ok(Density {
        value: ratio(size as i64, r as i64),
        witness: mask_elements(mask),
    })
}

/// Adapter so generic `?Sized` matroids can be viewed as `&dyn Matroid`.
struct DynRef<'a, M: ?Sized>(&'a M);

impl<M: Matroid + ?Sized> std::fmt::Debug for DynRef<'_, M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl<M: Matroid + ?Sized> Matroid for DynRef<'_, M> {
    fn ground_size(&self) -> usize {
        self.0.ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        self.0.is_independent(set)
    }
    fn rank(&self, set: &[usize]) -> usize {
        self.0.rank(set)
    }
    fn structure(&self) -> Structure {
        self.0.structure()
    }
}

/// True iff `|X|/r(X) <= |E|/r(E)` for every nonempty `X`.
pub fn is_uniformly_dense<M: Matroid + ?Sized>(m: &M) -> Result<bool> {
    is_uniformly_dense_with(m, &Limits::default())
}

pub fn is_uniformly_dense_with<M: Matroid + ?Sized>(m: &M, limits: &Limits) -> Result<bool> {
    let d = density_with(m, limits)?;
    let n = m.ground_size();
    Ok(d.value == ratio(n as i64, full_rank(m) as i64))
}

/// Minimum of `f_lambda(X) = lambda r(X) - |X|` and its extreme minimizers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minimizers {
    #[serde(with = "serde_str")]
    pub min_value: Rational,
    pub minimal: Vec<usize>,
    pub maximal: Vec<usize>,
    /// Number of distinct minimizers.
    pub count: usize,
}

pub fn f_lambda_minimizers<M: Matroid + ?Sized>(m: &M, lambda: &Rational) -> Result<Minimizers> {
    let table = RankTable::build(m, &Limits::default())?;
    minimizers_from_table(&table, lambda)
}

pub fn minimizers_from_table(table: &RankTable, lambda: &Rational) -> Result<Minimizers> {
    // f = (p r - q |X|) / q with q > 0.
    let p: i128 = lambda.numer().try_into().map_err(|_| {
        Error::InvalidInput(format!("lambda {lambda} too large for enumeration"))
    })?;
    let q: i128 = lambda.denom().try_into().map_err(|_| {
        Error::InvalidInput(format!("lambda {lambda} too large for enumeration"))
    })?;
    let value = |mask: u64| p * table.rank(mask) as i128 - q * mask.count_ones() as i128;
    let mut best = i128::MAX;
    let mut inter = 0u64;
    let mut union = 0u64;
    let mut count = 0usize;
    for mask in 0..=table.full_mask() {
        let v = value(mask);
        if v < best {
            best = v;
            inter = mask;
            union = mask;
            count = 1;
        } else if v == best {
            inter &= mask;
            union |= mask;
            count += 1;
        }
    }
    if value(inter) != best || value(union) != best {
        return Err(Error::Internal(
            "minimizers of f_lambda are not closed under union and intersection".into(),
        ));
    }
    Ok(Minimizers {
        min_value: Rational::new(best.into(), q.into()),
        minimal: mask_elements(inter),
        maximal: mask_elements(union),
        count,
    })
}

/// Nested sets `F_0 = {} < F_1 < ... < F_k = E` with critical values
/// `lambda_1 > ... > lambda_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalSequence {
    /// `F_0, ..., F_k`, each sorted.
    pub sets: Vec<Vec<usize>>,
    #[serde(serialize_with = "serialize_rationals")]
    pub critical_values: Vec<Rational>,
    /// `E_i = F_i - F_{i-1}` for `i = 1..=k`.
    pub parts: Vec<Vec<usize>>,
    /// Rank of each principal minor.
    pub ranks: Vec<usize>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::rational::format_rational(x))?;
    }
    seq.end()
}

impl PrincipalSequence {
    pub fn len(&self) -> usize {
        self.critical_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.critical_values.is_empty()
    }

    fn from_steps(n: usize, steps: Vec<(Vec<usize>, usize)>) -> Self {
        let mut sets = vec![Vec::new()];
        let mut critical_values = Vec::new();
        let mut parts = Vec::new();
        let mut ranks = Vec::new();
        let mut acc: Vec<usize> = Vec::new();
        for (mut part, r) in steps {
            part.sort_unstable();
            critical_values.push(ratio(part.len() as i64, r as i64));
            acc.extend(&part);
            acc.sort_unstable();
            sets.push(acc.clone());
            parts.push(part);
            ranks.push(r);
        }
        debug_assert!(n == 0 || sets.last().map(Vec::len) == Some(n));
        Self {
            sets,
            critical_values,
            parts,
            ranks,
        }
    }
}

/// Repeatedly contracts the maximal densest set of what remains.
pub fn principal_sequence<M: Matroid + ?Sized>(m: &M) -> Result<PrincipalSequence> {
    principal_sequence_with(m, &Limits::default())
}

pub fn principal_sequence_with<M: Matroid + ?Sized>(
    m: &M,
    limits: &Limits,
) -> Result<PrincipalSequence> {
    require_loopless(m)?;
    let n = m.ground_size();
    let dynm: &dyn Matroid = &DynRef(m);
    let seq = if let Some(parts) = partition_parts(dynm) {
        // Parts grouped by decreasing density |E_i| / r_i.
        let mut parts: Vec<_> = parts.into_iter().filter(|(p, _)| !p.is_empty()).collect();
        parts.sort_by(|(a, ca), (b, cb)| {
            ratio(b.len() as i64, *cb as i64).cmp(&ratio(a.len() as i64, *ca as i64))
        });
        let mut steps: Vec<(Vec<usize>, usize, Rational)> = Vec::new();
        for (p, cap) in parts {
            let d = ratio(p.len() as i64, cap as i64);
            match steps.last_mut() {
                Some((elements, r, last)) if *last == d => {
                    elements.extend(p);
                    *r += cap;
                }
                _ => steps.push((p, cap, d)),
            }
        }
        PrincipalSequence::from_steps(n, steps.into_iter().map(|(p, r, _)| (p, r)).collect())
    } else {
        let table = RankTable::build(m, limits)?;
        let mut contracted = 0u64;
        let mut steps = Vec::new();
        while contracted != table.full_mask() {
            let remaining = table.full_mask() & !contracted;
            let (_, r, x) = densest_in(&table, contracted, remaining)?;
            steps.push((mask_elements(x), r));
            contracted |= x;
        }
        PrincipalSequence::from_steps(n, steps)
    };
    if let Some(last) = seq.critical_values.last() {
        if *last < int(1) {
            return Err(Error::Internal(format!(
                "last critical value {last} is below 1 for a loopless matroid"
            )));
        }
    }
    Ok(seq)
}

/// `M_i = (M / F_{i-1}) | E_i` for each step of the principal sequence.
pub fn principal_minors(m: &SharedMatroid) -> Result<Vec<MinorView>> {
    let seq = principal_sequence(&**m)?;
    minors_of(m, &seq)
}

pub fn minors_of(m: &SharedMatroid, seq: &PrincipalSequence) -> Result<Vec<MinorView>> {
    let mut minors = Vec::with_capacity(seq.len());
    for i in 0..seq.len() {
        let minor = MinorView::new(m.clone(), &seq.sets[i], &seq.parts[i])?;
        let d = density(&minor)?;
        let expected = &seq.critical_values[i];
        if d.value != *expected || d.witness.len() != minor.ground_size() {
            return Err(Error::Internal(format!(
                "principal minor {} has density {} (witness {:?}), expected uniformly dense with {}",
                i + 1,
                d.value,
                d.witness,
                expected
            )));
        }
        minors.push(minor);
    }
    Ok(minors)
}

/// The partition matroid whose parts are the principal-minor ground sets
/// `E_i` with capacities `r_i`, computed on `M` without its loops; the loops
/// form one extra part of capacity zero.
pub fn associated_partition(m: &SharedMatroid) -> Result<PartitionMatroid> {
    let keep = non_loops(&**m);
    let loops: Vec<usize> = (0..m.ground_size()).filter(|e| keep.binary_search(e).is_err()).collect();
    let mut parts = Vec::new();
    if !keep.is_empty() {
        let restricted = MinorView::restriction(m.clone(), &keep)?;
        let seq = principal_sequence(&restricted)?;
        for (part, &r) in seq.parts.iter().zip(&seq.ranks) {
            parts.push((part.iter().map(|&x| keep[x]).collect(), r));
        }
    }
    if !loops.is_empty() {
        parts.push((loops, 0));
    }
    PartitionMatroid::new(parts)
}

/// One named property check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Exhaustively checks a principal sequence against its defining properties:
/// nesting, decreasing critical values, extreme minimizers of each
/// `f_lambda_i`, uniqueness of the minimizer at every other candidate
/// `lambda = a/b` with `b <= r(E)`, `a <= n`, and uniform density of every
/// principal minor.
pub fn check_principal_sequence(
    m: &SharedMatroid,
    seq: &PrincipalSequence,
) -> Result<Vec<PropertyCheck>> {
    let table = RankTable::build(&**m, &Limits::default())?;
    let n = m.ground_size();
    let mut checks = Vec::new();

    let nested = seq.sets.first().is_some_and(Vec::is_empty)
        && seq.sets.last().map(Vec::len) == Some(n)
        && seq.sets.windows(2).all(|w| {
            let (a, b) = (elements_mask(&w[0]), elements_mask(&w[1]));
            a & b == a && a != b
        });
    checks.push(PropertyCheck::new("strict nesting", nested, format!("{} steps", seq.len())));

    let decreasing = seq.critical_values.windows(2).all(|w| w[0] > w[1]);
    checks.push(PropertyCheck::new(
        "strictly decreasing critical values",
        decreasing,
        seq.critical_values
            .iter()
            .map(crate::rational::format_rational)
            .collect::<Vec<_>>()
            .join(" > "),
    ));

    let last_ok = seq.critical_values.last().is_some_and(|l| *l >= int(1));
    checks.push(PropertyCheck::new("last critical value >= 1", last_ok, ""));

    let total_rank: usize = seq.ranks.iter().sum();
    let sizes: usize = seq.parts.iter().map(Vec::len).sum();
    checks.push(PropertyCheck::new(
        "part sizes and ranks add up",
        total_rank == table.rank(table.full_mask()) && sizes == n,
        format!("sum r_i = {total_rank}, sum |E_i| = {sizes}"),
    ));

    for i in 0..seq.len() {
        let lambda = &seq.critical_values[i];
        let mins = minimizers_from_table(&table, lambda)?;
        let ok = mins.minimal == seq.sets[i] && mins.maximal == seq.sets[i + 1] && mins.count >= 2;
        checks.push(PropertyCheck::new(
            format!("extreme minimizers of f at lambda_{}", i + 1),
            ok,
            format!(
                "minimal {:?}, maximal {:?}, {} minimizers",
                mins.minimal, mins.maximal, mins.count
            ),
        ));
        let r_i = seq.ranks[i];
        let part_ok = *lambda == ratio(seq.parts[i].len() as i64, r_i as i64);
        checks.push(PropertyCheck::new(
            format!("lambda_{} = |E_{}| / r_{}", i + 1, i + 1, i + 1),
            part_ok,
            "",
        ));
    }

    let r_full = table.rank(table.full_mask()).max(1);
    let mut stray = Vec::new();
    for b in 1..=r_full {
        for a in 1..=n.max(1) * b {
            let lambda = ratio(a as i64, b as i64);
            if !lambda.denom().eq(&num_bigint::BigInt::from(b)) || seq.critical_values.contains(&lambda) {
                continue;
            }
            if minimizers_from_table(&table, &lambda)?.count > 1 {
                stray.push(crate::rational::format_rational(&lambda));
            }
        }
    }
    checks.push(PropertyCheck::new(
        "no other lambda has two minimizers",
        stray.is_empty(),
        if stray.is_empty() {
            String::new()
        } else {
            format!("extra critical values {}", stray.join(", "))
        },
    ));

    for i in 0..seq.len() {
        let minor = MinorView::new(m.clone(), &seq.sets[i], &seq.parts[i])?;
        let d = density(&minor)?;
        let ok = d.value == seq.critical_values[i] && is_uniformly_dense(&minor)?;
        checks.push(PropertyCheck::new(
            format!("minor {} uniformly dense with density lambda_{}", i + 1, i + 1),
            ok,
            format!("density {}", crate::rational::format_rational(&d.value)),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::matroid::direct_sum;
    use crate::zoo::{GraphicMatroid, Multigraph, UniformMatroid};

    fn triangle_pendant() -> GraphicMatroid {
        GraphicMatroid::new(Multigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]))
    }

    /// Brute-force density over all nonempty subsets, no rank table.
    fn brute_density<M: Matroid>(m: &M) -> Rational {
        (1u64..1 << m.ground_size())
            .map(|mask| {
                let set = mask_elements(mask);
                ratio(set.len() as i64, m.rank(&set) as i64)
            })
            .max()
            .unwrap()
    }

    #[test]
    fn density_examples() {
        let u24 = UniformMatroid::new(4, 2).unwrap();
        assert_eq!(density(&u24).unwrap(), Density { value: int(2), witness: vec![0, 1, 2, 3] });
        let k4 = GraphicMatroid::new(Multigraph::complete(4));
        let d = density(&k4).unwrap();
        assert_eq!(d.value, int(2));
        assert_eq!(d.value, brute_density(&k4));
        assert_eq!(d.witness, (0..6).collect::<Vec<_>>());
        let p3 = GraphicMatroid::new(Multigraph::path(3));
        assert_eq!(density(&p3).unwrap().value, int(1));
        assert!(matches!(density(&UniformMatroid::new(3, 0).unwrap()), Err(Error::HasLoops(_))));
    }

    #[test]
    fn uniform_density_examples() {
        for (n, r) in [(4, 2), (5, 1), (3, 3), (7, 4)] {
            assert!(is_uniformly_dense(&UniformMatroid::new(n, r).unwrap()).unwrap());
        }
        assert!(is_uniformly_dense(&GraphicMatroid::new(Multigraph::complete(5))).unwrap());
        assert!(!is_uniformly_dense(&triangle_pendant()).unwrap());
    }

    #[test]
    fn minimizer_examples() {
        let u24 = UniformMatroid::new(4, 2).unwrap();
        let at3 = f_lambda_minimizers(&u24, &int(3)).unwrap();
        assert_eq!((at3.min_value.clone(), at3.count), (int(0), 1));
        assert!(at3.maximal.is_empty());
        let at2 = f_lambda_minimizers(&u24, &int(2)).unwrap();
        assert_eq!(at2.min_value, int(0));
        assert!(at2.minimal.is_empty());
        assert_eq!(at2.maximal, vec![0, 1, 2, 3]);
        let big = f_lambda_minimizers(&triangle_pendant(), &int(1000)).unwrap();
        assert_eq!(big.count, 1);
    }

    #[test]
    fn principal_sequence_examples() {
        let u24 = UniformMatroid::new(4, 2).unwrap();
        let s = principal_sequence(&u24).unwrap();
        assert_eq!(s.critical_values, vec![int(2)]);
        assert_eq!(s.sets, vec![vec![], vec![0, 1, 2, 3]]);

        let sum = direct_sum(vec![
            Arc::new(UniformMatroid::new(3, 1).unwrap()),
            Arc::new(UniformMatroid::free(2)),
        ]);
        let s = principal_sequence(&sum).unwrap();
        assert_eq!(s.critical_values, vec![int(3), int(1)]);
        assert_eq!(s.sets[1], vec![0, 1, 2]);

        let s = principal_sequence(&triangle_pendant()).unwrap();
        assert_eq!(s.critical_values, vec![ratio(3, 2), int(1)]);
        assert_eq!(s.sets, vec![vec![], vec![0, 1, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        // The same partition matroid hidden behind a restriction (no structure hint).
        let sum: SharedMatroid = Arc::new(direct_sum(vec![
            Arc::new(UniformMatroid::new(4, 1).unwrap()),
            Arc::new(UniformMatroid::new(5, 3).unwrap()),
            Arc::new(UniformMatroid::free(3)),
            Arc::new(UniformMatroid::new(2, 1).unwrap()),
        ]));
        let hidden = MinorView::restriction(sum.clone(), &(0..14).collect::<Vec<_>>()).unwrap();
        assert_eq!(hidden.structure(), Structure::General);
        assert_eq!(principal_sequence(&*sum).unwrap(), principal_sequence(&hidden).unwrap());
        assert_eq!(density(&*sum).unwrap(), density(&hidden).unwrap());
    }

    #[test]
    fn minors_are_uniformly_dense() {
        let m: SharedMatroid = Arc::new(triangle_pendant());
        let minors = principal_minors(&m).unwrap();
        assert_eq!(minors.len(), 2);
        assert_eq!(minors[0].restricted(), &[0, 1, 2]);
        assert_eq!(minors[1].restricted(), &[3]);
        let seq = principal_sequence(&*m).unwrap();
        for c in check_principal_sequence(&m, &seq).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn tampered_sequence_fails_checks() {
        let m: SharedMatroid = Arc::new(triangle_pendant());
        let mut seq = principal_sequence(&*m).unwrap();
        seq.critical_values[0] = int(2);
        let checks = check_principal_sequence(&m, &seq).unwrap();
        assert!(checks.iter().any(|c| !c.passed));
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let big = GraphicMatroid::new(Multigraph::complete(7));
        assert!(matches!(principal_sequence(&big), Err(Error::SizeBound { .. })));
        let limits = Limits { enumeration_bound: 21 };
        assert_eq!(principal_sequence_with(&big, &limits).unwrap().len(), 1);
    }
}
