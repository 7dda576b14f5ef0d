use std::sync::Arc;

use super::{basis_of, Matroid, SharedMatroid, Structure};
use crate::error::{check_elements, Error, Result};

/// `(M / C) | S` over a base matroid, with `C` and `S` disjoint.
///
/// Local element `i` of the view is base element `restricted[i]`. A view of a
/// view is flattened onto the original base.
#[derive(Debug, Clone)]
pub struct MinorView {
    base: SharedMatroid,
    contracted: Vec<usize>,
    contracted_basis: Vec<usize>,
    restricted: Vec<usize>,
}

impl MinorView {
    pub fn new(base: SharedMatroid, contracted: &[usize], restricted: &[usize]) -> Result<Self> {
        let n = base.ground_size();
        check_elements(contracted, n)?;
        check_elements(restricted, n)?;
        let mut contracted = contracted.to_vec();
        contracted.sort_unstable();
        contracted.dedup();
        let mut seen = vec![false; n];
        for &e in &contracted {
            seen[e] = true;
        }
        let mut local = Vec::with_capacity(restricted.len());
        for &e in restricted {
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidInput(format!(
                    "element {e} is contracted and restricted to, or repeated"
                )));
            }
            local.push(e);
        }
        let contracted_basis = basis_of(&*base, &contracted);
        Ok(Self {
            base,
            contracted,
            contracted_basis,
            restricted: local,
        })
    }

    /// Restriction to `restricted` with nothing contracted.
    pub fn restriction(base: SharedMatroid, restricted: &[usize]) -> Result<Self> {
        Self::new(base, &[], restricted)
    }

    /// A minor of this view, expressed in local ids and flattened onto the base.
    pub fn minor(&self, contracted: &[usize], restricted: &[usize]) -> Result<Self> {
        let n = self.ground_size();
        check_elements(contracted, n)?;
        check_elements(restricted, n)?;
        let mut all_contracted = self.contracted.clone();
        all_contracted.extend(contracted.iter().map(|&i| self.restricted[i]));
        let mapped: Vec<usize> = restricted.iter().map(|&i| self.restricted[i]).collect();
        Self::new(self.base.clone(), &all_contracted, &mapped)
    }

    pub fn base(&self) -> &SharedMatroid {
        &self.base
    }

    pub fn contracted(&self) -> &[usize] {
        &self.contracted
    }

    /// Base element ids of the view's ground set, by local id.
    pub fn restricted(&self) -> &[usize] {
        &self.restricted
    }

    pub fn to_base(&self, local: usize) -> usize {
        self.restricted[local]
    }

    fn lift(&self, set: &[usize]) -> Vec<usize> {
        let mut lifted = self.contracted_basis.clone();
        lifted.extend(set.iter().map(|&i| self.restricted[i]));
        lifted
    }
}

impl Matroid for MinorView {
    fn ground_size(&self) -> usize {
        self.restricted.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.base.is_independent(&self.lift(set))
    }

    fn rank(&self, set: &[usize]) -> usize {
        self.base.rank(&self.lift(set)) - self.contracted_basis.len()
    }
}

pub fn make_minor(m: &SharedMatroid, contracted: &[usize], restricted: &[usize]) -> Result<MinorView> {
    MinorView::new(m.clone(), contracted, restricted)
}

/// Direct sum; part `i` occupies ids `offsets[i]..offsets[i+1]`.
#[derive(Debug, Clone)]
pub struct DirectSum {
    parts: Vec<SharedMatroid>,
    offsets: Vec<usize>,
}

impl DirectSum {
    pub fn new(parts: Vec<SharedMatroid>) -> Self {
        let mut offsets = vec![0];
        for p in &parts {
            offsets.push(offsets.last().unwrap() + p.ground_size());
        }
        Self { parts, offsets }
    }

    pub fn parts(&self) -> &[SharedMatroid] {
        &self.parts
    }

    /// Global ids of part `i`.
    pub fn part_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    fn split(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let mut split = vec![Vec::new(); self.parts.len()];
        for &e in set {
            let part = self.offsets.partition_point(|&o| o <= e) - 1;
            split[part].push(e - self.offsets[part]);
        }
        split
    }
}

impl Matroid for DirectSum {
    fn ground_size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.split(set)
            .iter()
            .zip(&self.parts)
            .all(|(s, p)| p.is_independent(s))
    }

    fn rank(&self, set: &[usize]) -> usize {
        self.split(set)
            .iter()
            .zip(&self.parts)
            .map(|(s, p)| p.rank(s))
            .sum()
    }

    fn structure(&self) -> Structure {
        let mut parts = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            let offset = self.offsets[i];
            match p.structure() {
                Structure::Uniform { rank } => {
                    parts.push((self.part_range(i).collect(), rank));
                }
                Structure::Partition { parts: inner } => {
                    for (elements, cap) in inner {
                        parts.push((elements.iter().map(|e| e + offset).collect(), cap));
                    }
                }
                Structure::General => return Structure::General,
            }
        }
        Structure::Partition { parts }
    }
}

pub fn direct_sum(parts: Vec<SharedMatroid>) -> DirectSum {
    DirectSum::new(parts)
}

impl From<DirectSum> for SharedMatroid {
    fn from(d: DirectSum) -> Self {
        Arc::new(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_axioms, mask_elements, parallel_classes};
    use crate::zoo::{GraphicMatroid, Multigraph, UniformMatroid};

    #[test]
    fn contracting_uniform_drops_rank() {
        let u24: SharedMatroid = Arc::new(UniformMatroid::new(4, 2).unwrap());
        let view = make_minor(&u24, &[0], &[1, 2, 3]).unwrap();
        assert_eq!(view.ground_size(), 3);
        for mask in 0u64..8 {
            let set = mask_elements(mask);
            assert_eq!(view.rank(&set), set.len().min(1));
        }
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let u24: SharedMatroid = Arc::new(UniformMatroid::new(4, 2).unwrap());
        assert!(make_minor(&u24, &[0, 1], &[1, 2]).is_err());
        assert!(make_minor(&u24, &[], &[2, 2]).is_err());
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let d = direct_sum(vec![
            Arc::new(UniformMatroid::new(3, 1).unwrap()),
            Arc::new(UniformMatroid::free(2)),
        ]);
        assert!(d.is_independent(&[1, 3]));
        assert!(!d.is_independent(&[0, 1]));
        assert_eq!(d.rank(&[0, 1, 2, 3, 4]), 3);
        check_axioms(&d).unwrap();
        assert_eq!(
            d.structure(),
            Structure::Partition {
                parts: vec![(vec![0, 1, 2], 1), (vec![3, 4], 2)]
            }
        );
    }

    #[test]
    fn triangle_contraction_makes_parallel_pair() {
        let tri: SharedMatroid = Arc::new(GraphicMatroid::new(Multigraph::from_edges(
            3,
            &[(0, 1), (1, 2), (0, 2)],
        )));
        let view = make_minor(&tri, &[0], &[1, 2]).unwrap();
        assert_eq!(parallel_classes(&view).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn views_of_views_flatten() {
        let u: SharedMatroid = Arc::new(UniformMatroid::new(6, 4).unwrap());
        let outer = make_minor(&u, &[0], &[1, 2, 3, 4, 5]).unwrap();
        let inner = outer.minor(&[0], &[1, 2, 3]).unwrap();
        assert_eq!(inner.contracted(), &[0, 1]);
        assert_eq!(inner.restricted(), &[2, 3, 4]);
        assert_eq!(inner.rank(&[0, 1, 2]), 2);
    }
}
