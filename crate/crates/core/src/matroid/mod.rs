//! Matroid oracle contract and the operations derived from it.
//!
//! A matroid is given by its ground size `n` (elements are `0..n`) and an
//! independence predicate. Rank, span, greedy bases, loops, parallel classes,
//! cocircuits, minors and duals are all derived from that predicate.

mod cache;
mod minor;

use std::fmt;
use std::sync::Arc;

use crate::error::{check_elements, Error, Result};

pub use cache::CountingMatroid;
pub use minor::{direct_sum, make_minor, DirectSum, MinorView};

/// Shared, immutable matroid handle.
pub type SharedMatroid = Arc<dyn Matroid>;

/// Structural hints that let algorithms use closed forms instead of enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    General,
    /// Independent iff at most `rank` elements.
    Uniform { rank: usize },
    /// Disjoint parts covering the ground set, each with a capacity.
    Partition { parts: Vec<(Vec<usize>, usize)> },
}

/// Independence oracle over the ground set `0..ground_size()`.
///
/// Implementations must be deterministic and satisfy the matroid axioms;
/// [`check_axioms`] verifies them exhaustively on small instances.
pub trait Matroid: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;

    /// `set` holds distinct, in-range element ids in any order.
    fn is_independent(&self, set: &[usize]) -> bool;

    /// Size of a largest independent subset of `set` (distinct, in-range ids).
    ///
    /// The default scans `set` in increasing index order and keeps every
    /// element that preserves independence.
    fn rank(&self, set: &[usize]) -> usize {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        greedy_scan(self, &sorted).len()
    }

    fn structure(&self) -> Structure {
        Structure::General
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        (**self).is_independent(set)
    }
    fn rank(&self, set: &[usize]) -> usize {
        (**self).rank(set)
    }
    fn structure(&self) -> Structure {
        (**self).structure()
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        (**self).is_independent(set)
    }
    fn rank(&self, set: &[usize]) -> usize {
        (**self).rank(set)
    }
    fn structure(&self) -> Structure {
        (**self).structure()
    }
}

/// Greedy procedure: keeps each element of `sequence` that preserves independence.
pub fn greedy_scan<M: Matroid + ?Sized>(m: &M, sequence: &[usize]) -> Vec<usize> {
    let mut kept = Vec::with_capacity(sequence.len());
    for &e in sequence {
        kept.push(e);
        if !m.is_independent(&kept) {
            kept.pop();
        }
    }
    kept
}

fn normalized(set: &[usize], n: usize) -> Result<Vec<usize>> {
    check_elements(set, n)?;
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Rank of an arbitrary element list (duplicates ignored).
pub fn rank<M: Matroid + ?Sized>(m: &M, set: &[usize]) -> Result<usize> {
    let set = normalized(set, m.ground_size())?;
    Ok(m.rank(&set))
}

pub fn is_independent<M: Matroid + ?Sized>(m: &M, set: &[usize]) -> Result<bool> {
    check_elements(set, m.ground_size())?;
    let mut v = set.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    Ok(m.is_independent(&v))
}

/// True iff `r(set + e) = r(set)`.
pub fn in_span<M: Matroid + ?Sized>(m: &M, set: &[usize], e: usize) -> Result<bool> {
    let set = normalized(set, m.ground_size())?;
    check_elements(&[e], m.ground_size())?;
    if set.binary_search(&e).is_ok() {
        return Ok(true);
    }
    let base = m.rank(&set);
    let mut with = set;
    with.push(e);
    Ok(m.rank(&with) == base)
}

/// Lexicographically first basis for the given order of the whole ground set.
pub fn greedy_opt<M: Matroid + ?Sized>(m: &M, order: &[usize]) -> Result<Vec<usize>> {
    let n = m.ground_size();
    check_elements(order, n)?;
    let mut seen = vec![false; n];
    for &e in order {
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::InvalidInput(format!("element {e} repeated in order")));
        }
    }
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "order has {} elements, ground set has {n}",
            order.len()
        )));
    }
    Ok(greedy_scan(m, order))
}

/// Some basis of `set`, scanning in increasing index order.
pub fn basis_of<M: Matroid + ?Sized>(m: &M, set: &[usize]) -> Vec<usize> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    greedy_scan(m, &sorted)
}

pub fn full_rank<M: Matroid + ?Sized>(m: &M) -> usize {
    let all: Vec<usize> = (0..m.ground_size()).collect();
    m.rank(&all)
}

pub fn loops<M: Matroid + ?Sized>(m: &M) -> Vec<usize> {
    (0..m.ground_size())
        .filter(|&e| !m.is_independent(&[e]))
        .collect()
}

pub fn non_loops<M: Matroid + ?Sized>(m: &M) -> Vec<usize> {
    (0..m.ground_size())
        .filter(|&e| m.is_independent(&[e]))
        .collect()
}

pub(crate) fn require_loopless<M: Matroid + ?Sized>(m: &M) -> Result<()> {
    let l = loops(m);
    if l.is_empty() {
        Ok(())
    } else {
        Err(Error::HasLoops(l))
    }
}

/// Classes of the relation `e ~ f  iff  e = f or r({e,f}) = 1`, each sorted,
/// ordered by smallest member.
pub fn parallel_classes<M: Matroid + ?Sized>(m: &M) -> Result<Vec<Vec<usize>>> {
    require_loopless(m)?;
    let n = m.ground_size();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for e in 0..n {
        if class_of[e] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[e] = id;
        let mut class = vec![e];
        for f in e + 1..n {
            if class_of[f] == usize::MAX && !m.is_independent(&[e, f]) {
                class_of[f] = id;
                class.push(f);
            }
        }
        classes.push(class);
    }
    // Transitivity check on the output.
    for class in &classes {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if m.is_independent(&[a, b]) {
                    return Err(Error::Internal(format!(
                        "parallel relation not transitive at {{{a},{b}}}"
                    )));
                }
            }
        }
    }
    Ok(classes)
}

/// Largest ground set on which cocircuits are searched exhaustively.
pub const COCIRCUIT_BOUND: usize = 24;

fn is_cocircuit<M: Matroid + ?Sized>(m: &M, set: &[usize], full: usize) -> bool {
    let n = m.ground_size();
    let mut inside = vec![false; n];
    for &e in set {
        inside[e] = true;
    }
    let complement: Vec<usize> = (0..n).filter(|&e| !inside[e]).collect();
    if m.rank(&complement) == full {
        return false;
    }
    // Minimal: adding any member back restores full rank.
    set.iter().all(|&f| {
        let mut c = complement.clone();
        c.push(f);
        c.sort_unstable();
        m.rank(&c) == full
    })
}

/// A smallest cocircuit (circuit of the dual) containing `e`.
///
/// Exhaustive over subsets by increasing size: `O(2^n)` rank queries in the
/// worst case, so gated to `n <= 24`.
pub fn min_cocircuit<M: Matroid + ?Sized>(m: &M, e: usize) -> Result<Vec<usize>> {
    let n = m.ground_size();
    check_elements(&[e], n)?;
    if n > COCIRCUIT_BOUND {
        return Err(Error::SizeBound {
            what: "cocircuit search",
            size: n,
            bound: COCIRCUIT_BOUND,
        });
    }
    if !m.is_independent(&[e]) {
        return Err(Error::HasLoops(vec![e]));
    }
    let full = full_rank(m);
    let others: Vec<usize> = (0..n).filter(|&f| f != e).collect();
    for extra in 0..n {
        let mut found = None;
        for_each_combination(others.len(), extra, |idx| {
            let mut set: Vec<usize> = idx.iter().map(|&i| others[i]).collect();
            set.push(e);
            set.sort_unstable();
            if is_cocircuit(m, &set, full) {
                found = Some(set);
                return false;
            }
            true
        });
        if let Some(set) = found {
            return Ok(set);
        }
    }
    Err(Error::Internal(format!("no cocircuit contains non-loop {e}")))
}

pub fn min_cocircuit_size<M: Matroid + ?Sized>(m: &M, e: usize) -> Result<usize> {
    min_cocircuit(m, e).map(|c| c.len())
}

/// `c*(M)`: the largest, over elements, smallest cocircuit size.
pub fn c_star<M: Matroid + ?Sized>(m: &M) -> Result<usize> {
    require_loopless(m)?;
    let mut best = 0;
    for e in 0..m.ground_size() {
        best = best.max(min_cocircuit_size(m, e)?);
    }
    Ok(best)
}

/// Calls `f` with every `k`-subset of `0..n` (as sorted indices) in
/// lexicographic order until `f` returns false.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Per-prefix ranks `r(A_1), ..., r(A_n)` along an element ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile(Vec<usize>);

impl RankProfile {
    pub fn along<M: Matroid + ?Sized>(m: &M, order: &[usize]) -> Result<Self> {
        check_elements(order, m.ground_size())?;
        // Incremental greedy: the kept set is a basis of every prefix.
        let mut kept = Vec::new();
        let mut ranks = Vec::with_capacity(order.len());
        for &e in order {
            kept.push(e);
            if !m.is_independent(&kept) {
                kept.pop();
            }
            ranks.push(kept.len());
        }
        Ok(RankProfile(ranks))
    }

    /// `r(A_j)` for `j = 1..=n`.
    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    /// Nondecreasing with unit steps starting from `r(A_0) = 0`.
    pub fn is_valid(&self) -> bool {
        let mut prev = 0;
        self.0.iter().all(|&r| {
            let ok = r == prev || r == prev + 1;
            prev = r;
            ok
        })
    }
}

/// The dual matroid, through `r*(X) = |X| + r(E - X) - r(E)`.
#[derive(Debug, Clone)]
pub struct Dual<M> {
    inner: M,
    full_rank: usize,
}

impl<M: Matroid> Dual<M> {
    pub fn new(inner: M) -> Self {
        let full_rank = full_rank(&inner);
        Self { inner, full_rank }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    fn complement(&self, set: &[usize]) -> Vec<usize> {
        let n = self.inner.ground_size();
        let mut inside = vec![false; n];
        for &e in set {
            inside[e] = true;
        }
        (0..n).filter(|&e| !inside[e]).collect()
    }
}

impl<M: Matroid> Matroid for Dual<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.inner.rank(&self.complement(set)) == self.full_rank
    }

    fn rank(&self, set: &[usize]) -> usize {
        set.len() + self.inner.rank(&self.complement(set)) - self.full_rank
    }
}

/// Exhaustively checks the independence axioms (empty set, hereditary,
/// exchange) and the rank/independence agreement. Intended for `n <= 10`.
pub fn check_axioms<M: Matroid + ?Sized>(m: &M) -> std::result::Result<(), String> {
    let n = m.ground_size();
    if n > 16 {
        return Err(format!("axiom check limited to 16 elements, got {n}"));
    }
    let total = 1usize << n;
    let indep: Vec<bool> = (0..total)
        .map(|mask| m.is_independent(&mask_elements(mask as u64)))
        .collect();
    if !indep[0] {
        return Err("empty set is dependent".into());
    }
    for mask in 1..total {
        if !indep[mask] {
            continue;
        }
        for e in 0..n {
            if mask & (1 << e) != 0 && !indep[mask & !(1 << e)] {
                return Err(format!("not hereditary at {:?}", mask_elements(mask as u64)));
            }
        }
    }
    for a in 0..total {
        if !indep[a] {
            continue;
        }
        for b in 0..total {
            if !indep[b] || (b as u64).count_ones() <= (a as u64).count_ones() {
                continue;
            }
            let ok = (0..n).any(|e| b & (1 << e) != 0 && a & (1 << e) == 0 && indep[a | (1 << e)]);
            if !ok {
                return Err(format!(
                    "exchange fails for {:?} and {:?}",
                    mask_elements(a as u64),
                    mask_elements(b as u64)
                ));
            }
        }
    }
    // Rank must be the largest independent subset size.
    let mut best = vec![0u32; total];
    for mask in 0..total {
        best[mask] = if indep[mask] {
            (mask as u64).count_ones()
        } else {
            (0..n)
                .filter(|&e| mask & (1 << e) != 0)
                .map(|e| best[mask & !(1 << e)])
                .max()
                .unwrap_or(0)
        };
        let r = m.rank(&mask_elements(mask as u64));
        if r as u32 != best[mask] {
            return Err(format!(
                "rank of {:?} is {r}, expected {}",
                mask_elements(mask as u64),
                best[mask]
            ));
        }
    }
    Ok(())
}

/// Elements of a bitmask, increasing.
pub fn mask_elements(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let e = mask.trailing_zeros() as usize;
        out.push(e);
        mask &= mask - 1;
    }
    out
}

pub fn elements_mask(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |acc, &e| acc | (1u64 << e))
}
