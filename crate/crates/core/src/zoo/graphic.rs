use super::graph::{DisjointSets, Multigraph};
use crate::matroid::Matroid;

/// Cycle matroid of a multigraph: a set of edges is independent iff it is a forest.
#[derive(Debug, Clone)]
pub struct GraphicMatroid {
    graph: Multigraph,
}

impl GraphicMatroid {
    pub fn new(graph: Multigraph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// Number of successful unions while scanning `set`.
    fn forest_size(&self, set: &[usize]) -> usize {
        let mut dsu = DisjointSets::new(self.graph.vertex_count());
        set.iter()
            .filter(|&&e| {
                let (u, v) = self.graph.edge(e);
                dsu.union(u, v)
            })
            .count()
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut dsu = DisjointSets::new(self.graph.vertex_count());
        set.iter().all(|&e| {
            let (u, v) = self.graph.edge(e);
            dsu.union(u, v)
        })
    }

    fn rank(&self, set: &[usize]) -> usize {
        self.forest_size(set)
    }
}

/// Bond matroid: `X` is independent iff deleting `X` leaves the number of
/// connected components unchanged. Bridges are its loops; self-loops are coloops.
#[derive(Debug, Clone)]
pub struct CographicMatroid {
    graphic: GraphicMatroid,
    graphic_rank: usize,
}

impl CographicMatroid {
    pub fn new(graph: Multigraph) -> Self {
        let graphic = GraphicMatroid::new(graph);
        let all: Vec<usize> = (0..graphic.ground_size()).collect();
        let graphic_rank = graphic.rank(&all);
        Self {
            graphic,
            graphic_rank,
        }
    }

    pub fn graph(&self) -> &Multigraph {
        self.graphic.graph()
    }

    fn complement(&self, set: &[usize]) -> Vec<usize> {
        let m = self.graphic.ground_size();
        let mut inside = vec![false; m];
        for &e in set {
            inside[e] = true;
        }
        (0..m).filter(|&e| !inside[e]).collect()
    }
}

impl Matroid for CographicMatroid {
    fn ground_size(&self) -> usize {
        self.graphic.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        self.graphic.rank(&self.complement(set)) == self.graphic_rank
    }

    fn rank(&self, set: &[usize]) -> usize {
        set.len() + self.graphic.rank(&self.complement(set)) - self.graphic_rank
    }
}
