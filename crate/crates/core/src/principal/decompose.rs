//! The all-`1/gamma` vector as a convex combination of independent sets.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{mask_elements, Matroid};
use crate::rational::{format_rational, int, serde_str, Rational};

use super::{density_with, cover::partition_cover, Limits, RankTable};

/// `copies` parallel copies of every element; copy `j` of `e` is `e * copies + j`.
#[derive(Debug, Clone)]
pub struct ParallelCopies<M> {
    inner: M,
    copies: usize,
}

impl<M: Matroid> ParallelCopies<M> {
    pub fn new(inner: M, copies: usize) -> Self {
        assert!(copies > 0, "at least one copy per element");
        Self { inner, copies }
    }

    pub fn original(&self, element: usize) -> usize {
        element / self.copies
    }
}

impl<M: Matroid> Matroid for ParallelCopies<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size() * self.copies
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut originals: Vec<usize> = set.iter().map(|&e| self.original(e)).collect();
        originals.sort_unstable();
        let before = originals.len();
        originals.dedup();
        originals.len() == before && self.inner.is_independent(&originals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTerm {
    pub set: Vec<usize>,
    #[serde(with = "serde_str")]
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexDecomposition {
    #[serde(with = "serde_str")]
    pub gamma: Rational,
    pub terms: Vec<DecompositionTerm>,
}

impl ConvexDecomposition {
    /// `sum_I lambda_I chi_I`, coordinatewise.
    pub fn point(&self, ground_size: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ground_size];
        for t in &self.terms {
            for &e in &t.set {
                x[e] += &t.coefficient;
            }
        }
        x
    }

    /// Checks positivity, independence, that coefficients sum to one and the
    /// exact identity with the all-`1/gamma` vector.
    pub fn verify<M: Matroid + ?Sized>(&self, m: &M) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));
        if let Some(t) = self.terms.iter().find(|t| !t.coefficient.is_positive()) {
            return fail(format!("nonpositive coefficient on {:?}", t.set));
        }
        if let Some(t) = self.terms.iter().find(|t| !m.is_independent(&t.set)) {
            return fail(format!("dependent set {:?}", t.set));
        }
        let total: Rational = self.terms.iter().map(|t| &t.coefficient).sum();
        if !total.is_one() {
            return fail(format!("coefficients sum to {}", format_rational(&total)));
        }
        let target = self.gamma.recip();
        for (e, v) in self.point(m.ground_size()).iter().enumerate() {
            if *v != target {
                return fail(format!(
                    "coordinate {e} is {} instead of {}",
                    format_rational(v),
                    format_rational(&target)
                ));
            }
        }
        if self.terms.len() > m.ground_size() + 1 {
            return fail(format!("{} terms for {} elements", self.terms.len(), m.ground_size()));
        }
        Ok(())
    }
}

/// `min_X r(X) - x(X)` and a minimizing set; `x` lies in the independence
/// polytope iff `x >= 0` and the minimum is zero.
pub fn polytope_slack<M: Matroid + ?Sized>(
    m: &M,
    x: &[Rational],
    limits: &Limits,
) -> Result<(Rational, Vec<usize>)> {
    if x.len() != m.ground_size() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates for {} elements",
            x.len(),
            m.ground_size()
        )));
    }
    let table = RankTable::build(m, limits)?;
    let mut best = Rational::zero();
    let mut arg = 0u64;
    for mask in 1..=table.full_mask() {
        let weight: Rational = mask_elements(mask).iter().map(|&e| &x[e]).sum();
        let v = int(table.rank(mask) as i64) - weight;
        if v < best {
            best = v;
            arg = mask;
        }
    }
    Ok((best, mask_elements(arg)))
}

/// With `gamma = a/b`, covers `b` parallel copies of the ground set by `a`
/// independent sets. Every element then lies in exactly `b` of them, so
/// weighting each set by `1/a` gives the all-`1/gamma` vector.
pub fn convex_decomposition<M: Matroid + ?Sized>(m: &M) -> Result<ConvexDecomposition> {
    convex_decomposition_with(m, &Limits::default())
}

pub fn convex_decomposition_with<M: Matroid + ?Sized>(
    m: &M,
    limits: &Limits,
) -> Result<ConvexDecomposition> {
    let gamma = density_with(m, limits)?.value;
    let a = gamma.numer().to_usize().expect("density numerator fits");
    let b = gamma.denom().to_usize().expect("density denominator fits");
    let copies = ParallelCopies::new(m, b);
    let sets = partition_cover(&copies, a).map_err(|e| match e {
        Error::InfeasibleCover { .. } => {
            Error::Internal(format!("no cover of {b} copies by {a} sets despite density {gamma}"))
        }
        other => other,
    })?;
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for set in sets {
        let mut originals: Vec<usize> = set.iter().map(|&e| copies.original(e)).collect();
        originals.sort_unstable();
        *counts.entry(originals).or_default() += 1;
    }
    let terms = counts
        .into_iter()
        .map(|(set, c)| DecompositionTerm {
            set,
            coefficient: Rational::new(c.into(), a.into()),
        })
        .collect();
    let decomposition = ConvexDecomposition { gamma, terms };
    decomposition.verify(m)?;
    if m.ground_size() <= limits.enumeration_bound {
        let point = decomposition.point(m.ground_size());
        let (slack, set) = polytope_slack(m, &point, limits)?;
        if slack.is_negative() {
            return Err(Error::Internal(format!("rank constraint of {set:?} violated")));
        }
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::zoo::{GraphicMatroid, Multigraph, UniformMatroid};

    #[test]
    fn decomposition_examples() {
        let u12 = UniformMatroid::new(2, 1).unwrap();
        let d = convex_decomposition(&u12).unwrap();
        assert_eq!(d.terms.len(), 2);
        assert!(d.terms.iter().all(|t| t.coefficient == ratio(1, 2) && t.set.len() == 1));

        let free = UniformMatroid::free(3);
        let d = convex_decomposition(&free).unwrap();
        assert_eq!(d.terms, vec![DecompositionTerm { set: vec![0, 1, 2], coefficient: int(1) }]);

        let triangle = GraphicMatroid::new(Multigraph::cycle(3));
        let d = convex_decomposition(&triangle).unwrap();
        assert_eq!(d.gamma, ratio(3, 2));
        let sets: Vec<_> = d.terms.iter().map(|t| t.set.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(d.terms.iter().all(|t| t.coefficient == ratio(1, 3)));
        assert_eq!(d.point(3), vec![ratio(2, 3); 3]);
    }

    #[test]
    fn non_uniform_density() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let m = GraphicMatroid::new(g);
        convex_decomposition(&m).unwrap().verify(&m).unwrap();
    }

    #[test]
    fn slack_detects_infeasible_points() {
        let u = UniformMatroid::new(3, 1).unwrap();
        let (slack, set) = polytope_slack(&u, &vec![ratio(1, 2); 3], &Limits::default()).unwrap();
        assert_eq!(slack, ratio(-1, 2));
        assert_eq!(set, vec![0, 1, 2]);
    }

    #[test]
    fn tampered_decomposition_fails() {
        let u = UniformMatroid::new(4, 2).unwrap();
        let mut d = convex_decomposition(&u).unwrap();
        d.terms[0].coefficient += ratio(1, 100);
        assert!(d.verify(&u).is_err());
    }
}
