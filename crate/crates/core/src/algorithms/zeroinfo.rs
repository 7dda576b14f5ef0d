//! Algorithms for the zero information model, where the adversary assigns
//! weights to elements and only the arrival order is random.

use crate::error::{Error, Result};
use crate::harness::{
    shuffle, Decision, OnlineAlgorithm, Randomness, RevealContext, StartInfo, Strategy, Token,
};
use crate::matroid::{non_loops, parallel_classes, MinorView, SharedMatroid};
use crate::principal::{convex_decomposition, three_cobase_cover, ConvexDecomposition};
use crate::zoo::{bridges_and_2ecc, series_contract, LinearMatroid, Multigraph};

use super::secretary::ClassSecretaries;

/// Classes of elements and a family of independent sets, each given by the
/// classes it represents. A run picks one set per group and then either takes
/// every element of it or one element per represented class.
#[derive(Debug, Clone)]
struct Group {
    classes: Vec<Vec<usize>>,
    options: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CographicVariant {
    /// Per 2-edge-connected component, one of three cobases of its series
    /// contraction, then one secretary per represented series class.
    Secretary,
    /// For 3-edge-connected graphs: accept one of three covering cobases outright.
    PureBases,
}

#[derive(Debug, Clone)]
pub struct CographicAlgorithm {
    variant: CographicVariant,
    n: usize,
    groups: Vec<Group>,
}

impl CographicAlgorithm {
    pub fn new(g: &Multigraph, variant: CographicVariant) -> Result<Self> {
        let groups = match variant {
            CographicVariant::PureBases => {
                let cover = three_cobase_cover(g)?;
                vec![Group {
                    classes: (0..g.edge_count()).map(|e| vec![e]).collect(),
                    options: cover.cobases,
                }]
            }
            CographicVariant::Secretary => {
                let mut groups = Vec::new();
                for component in bridges_and_2ecc(g).components {
                    let (sub, original) = g.edge_subgraph(&component);
                    let contracted = series_contract(&sub)?;
                    let cover = three_cobase_cover(&contracted.graph)?;
                    groups.push(Group {
                        classes: contracted
                            .classes
                            .iter()
                            .map(|c| c.iter().map(|&x| original[x]).collect())
                            .collect(),
                        options: cover.cobases,
                    });
                }
                groups
            }
        };
        Ok(Self {
            variant,
            n: g.edge_count(),
            groups,
        })
    }

    /// Edges covered by option `i` of each component, as `(component, edges)`.
    pub fn cobase_edges(&self, i: usize) -> Vec<Vec<usize>> {
        self.groups
            .iter()
            .map(|g| {
                let mut edges: Vec<usize> = g.options[i].iter().flat_map(|&c| g.classes[c].clone()).collect();
                edges.sort_unstable();
                edges
            })
            .collect()
    }

    /// Series classes per 2-edge-connected component.
    pub fn classes(&self) -> Vec<Vec<Vec<usize>>> {
        self.groups.iter().map(|g| g.classes.clone()).collect()
    }
}

impl Strategy for CographicAlgorithm {
    fn name(&self) -> String {
        match self.variant {
            CographicVariant::Secretary => "cographic".into(),
            CographicVariant::PureBases => "cographic-pure".into(),
        }
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(GroupRun {
            n: self.n,
            groups: &self.groups,
            choice: GroupChoice::Uniform,
            take_all: self.variant == CographicVariant::PureBases,
            state: None,
        })
    }

    fn prepared_for(&self) -> Option<usize> {
        Some(self.n)
    }
}

enum GroupChoice<'a> {
    Uniform,
    Weighted(&'a [crate::rational::Rational]),
}

enum RunState {
    TakeAll(Vec<bool>),
    Secretaries(ClassSecretaries),
}

struct GroupRun<'a> {
    n: usize,
    groups: &'a [Group],
    choice: GroupChoice<'a>,
    take_all: bool,
    state: Option<RunState>,
}

impl OnlineAlgorithm for GroupRun<'_> {
    fn start(&mut self, _: &StartInfo<'_>, rng: &mut dyn Randomness) -> Result<()> {
        let mut selected: Vec<Vec<usize>> = Vec::new();
        for g in self.groups {
            if g.options.is_empty() {
                continue;
            }
            let i = match self.choice {
                GroupChoice::Uniform => rng.uniform_index(g.options.len()),
                GroupChoice::Weighted(w) => rng.categorical(w),
            };
            selected.extend(g.options[i].iter().map(|&c| g.classes[c].clone()));
        }
        self.state = Some(if self.take_all {
            let mut take = vec![false; self.n];
            for e in selected.into_iter().flatten() {
                take[e] = true;
            }
            RunState::TakeAll(take)
        } else {
            RunState::Secretaries(ClassSecretaries::new(self.n, &selected))
        });
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        let take = match self.state.as_mut().expect("started") {
            RunState::TakeAll(take) => take[token.element()],
            RunState::Secretaries(s) => s.offer(token, ctx, true),
        };
        Ok(if take { Decision::Accept } else { Decision::Reject })
    }
}

/// Draws an independent set from a convex decomposition of the all-`1/gamma`
/// vector and accepts its elements blind; the simplified variant first keeps
/// one element per parallel class, then runs a secretary per class
/// represented in the drawn set. Loops are discarded first.
#[derive(Debug, Clone)]
pub struct LowDensityAlgorithm {
    simplified: bool,
    n: usize,
    decomposition: Option<ConvexDecomposition>,
    group: Group,
    coefficients: Vec<crate::rational::Rational>,
}

impl LowDensityAlgorithm {
    pub fn new(m: SharedMatroid, simplified: bool) -> Result<Self> {
        let n = m.ground_size();
        let keep = non_loops(&*m);
        let classes: Vec<Vec<usize>> = if simplified {
            let view = MinorView::restriction(m.clone(), &keep)?;
            parallel_classes(&view)?
                .into_iter()
                .map(|c| c.into_iter().map(|x| keep[x]).collect())
                .collect()
        } else {
            keep.iter().map(|&e| vec![e]).collect()
        };
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let (decomposition, options, coefficients) = if reps.is_empty() {
            (None, Vec::new(), Vec::new())
        } else {
            let simple = MinorView::restriction(m.clone(), &reps)?;
            let d = convex_decomposition(&simple)?;
            // Decomposition sets are local ids into `reps`, i.e. class indices.
            let options = d.terms.iter().map(|t| t.set.clone()).collect();
            let coefficients = d.terms.iter().map(|t| t.coefficient.clone()).collect();
            (Some(d), options, coefficients)
        };
        Ok(Self {
            simplified,
            n,
            decomposition,
            group: Group { classes, options },
            coefficients,
        })
    }

    /// Decomposition over the class representatives (local ids index the classes).
    pub fn decomposition(&self) -> Option<&ConvexDecomposition> {
        self.decomposition.as_ref()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.group.classes
    }
}

impl Strategy for LowDensityAlgorithm {
    fn name(&self) -> String {
        if self.simplified {
            "low-density-simplified".into()
        } else {
            "low-density".into()
        }
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(GroupRun {
            n: self.n,
            groups: std::slice::from_ref(&self.group),
            choice: GroupChoice::Weighted(&self.coefficients),
            take_all: !self.simplified,
            state: None,
        })
    }

    fn prepared_for(&self) -> Option<usize> {
        Some(self.n)
    }
}

/// For a matrix with at most `k` nonzeros per column: permute rows at random,
/// let `B_i` be the columns whose first nonzero (in permuted order) is row
/// `i`, and run one secretary per nonempty `B_i`.
#[derive(Debug, Clone)]
pub struct ColumnSparseAlgorithm {
    matrix: LinearMatroid,
    supports: Vec<Vec<usize>>,
}

impl ColumnSparseAlgorithm {
    pub fn new(matrix: LinearMatroid) -> Self {
        let supports = (0..matrix.rows()).map(|r| matrix.row_support(r)).collect();
        Self { matrix, supports }
    }

    pub fn sparsity(&self) -> usize {
        self.matrix.column_sparsity()
    }

    /// The sets `B_i` for a given row order.
    pub fn blocks(&self, row_order: &[usize]) -> Vec<Vec<usize>> {
        let mut claimed = vec![false; self.matrix.cols()];
        let mut blocks = Vec::new();
        for &row in row_order {
            let block: Vec<usize> = self.supports[row].iter().copied().filter(|&c| !claimed[c]).collect();
            for &c in &block {
                claimed[c] = true;
            }
            if !block.is_empty() {
                blocks.push(block);
            }
        }
        blocks
    }
}

impl Strategy for ColumnSparseAlgorithm {
    fn name(&self) -> String {
        "column-sparse".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(ColumnSparseRun { strategy: self, secretaries: None })
    }

    fn prepared_for(&self) -> Option<usize> {
        Some(self.matrix.cols())
    }
}

struct ColumnSparseRun<'a> {
    strategy: &'a ColumnSparseAlgorithm,
    secretaries: Option<ClassSecretaries>,
}

impl OnlineAlgorithm for ColumnSparseRun<'_> {
    fn start(&mut self, info: &StartInfo<'_>, rng: &mut dyn Randomness) -> Result<()> {
        if info.n != self.strategy.matrix.cols() {
            return Err(Error::InvalidInput("matrix does not match the matroid".into()));
        }
        let mut rows: Vec<usize> = (0..self.strategy.matrix.rows()).collect();
        shuffle(rng, &mut rows);
        let blocks = self.strategy.blocks(&rows);
        self.secretaries = Some(ClassSecretaries::new(info.n, &blocks));
        Ok(())
    }

    fn reveal(&mut self, token: Token, ctx: &mut RevealContext<'_>, _: &mut dyn Randomness) -> Result<Decision> {
        let take = self.secretaries.as_mut().expect("started").offer(token, ctx, true);
        Ok(if take { Decision::Accept } else { Decision::Reject })
    }
}
