//! Concrete matroid families, graph utilities and the instance file format.

mod fixtures;
mod graph;
mod graphic;
mod linear;
mod parse;

pub use graph::{
    bridges_and_2ecc, is_k_edge_connected, series_classes, series_contract, BridgeDecomposition,
    Multigraph, SeriesContraction,
};
pub use fixtures::{fixture, fixtures_up_to, FIXTURE_NAMES};
pub use graphic::{CographicMatroid, GraphicMatroid};
pub use linear::{column_sparsity, Field, LinearMatroid};
pub use parse::{parse_instance, parse_instance_file, parse_matroid, Instance};

use crate::error::{Error, Result};
use crate::matroid::{Matroid, Structure};

/// `U_{r,n}`: independent iff at most `r` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformMatroid {
    n: usize,
    r: usize,
}

impl UniformMatroid {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidInput(format!("uniform rank {r} exceeds size {n}")));
        }
        Ok(Self { n, r })
    }

    /// The free matroid, where every set is independent.
    pub fn free(n: usize) -> Self {
        Self { n, r: n }
    }

    pub fn rank_bound(&self) -> usize {
        self.r
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.r
    }
    fn rank(&self, set: &[usize]) -> usize {
        set.len().min(self.r)
    }
    fn structure(&self) -> Structure {
        Structure::Uniform { rank: self.r }
    }
}

/// Independent iff at most `capacity_i` elements from each part `E_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    part_of: Vec<usize>,
    parts: Vec<(Vec<usize>, usize)>,
}

impl PartitionMatroid {
    /// `parts` must partition `0..n` for some `n`; capacities may not exceed part sizes.
    pub fn new(parts: Vec<(Vec<usize>, usize)>) -> Result<Self> {
        let n: usize = parts.iter().map(|(p, _)| p.len()).sum();
        let mut part_of = vec![usize::MAX; n];
        for (i, (elements, cap)) in parts.iter().enumerate() {
            if *cap > elements.len() {
                return Err(Error::InvalidInput(format!(
                    "part {i} has capacity {cap} but only {} elements",
                    elements.len()
                )));
            }
            for &e in elements {
                if e >= n || part_of[e] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "parts do not partition 0..{n}: element {e}"
                    )));
                }
                part_of[e] = i;
            }
        }
        let parts = parts
            .into_iter()
            .map(|(mut p, c)| {
                p.sort_unstable();
                (p, c)
            })
            .collect();
        Ok(Self { part_of, parts })
    }

    pub fn parts(&self) -> &[(Vec<usize>, usize)] {
        &self.parts
    }

    fn counts(&self, set: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.parts.len()];
        for &e in set {
            counts[self.part_of[e]] += 1;
        }
        counts
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.part_of.len()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        self.counts(set)
            .iter()
            .zip(&self.parts)
            .all(|(c, (_, cap))| c <= cap)
    }
    fn rank(&self, set: &[usize]) -> usize {
        self.counts(set)
            .iter()
            .zip(&self.parts)
            .map(|(c, (_, cap))| *c.min(cap))
            .sum()
    }
    fn structure(&self) -> Structure {
        Structure::Partition {
            parts: self.parts.clone(),
        }
    }
}
