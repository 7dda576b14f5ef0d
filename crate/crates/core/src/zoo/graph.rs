use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected multigraph with stable edge ids; self-loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    names: Vec<String>,
}

impl Multigraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, names: Vec<String>) -> Result<Self> {
        if names.len() != edges.len() {
            return Err(Error::InvalidInput("one name per edge required".into()));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) uses a vertex outside 0..{vertices}"
            )));
        }
        Ok(Self {
            vertices,
            edges,
            names,
        })
    }

    /// Edges named `e0, e1, ...`. Panics on out-of-range vertices.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let names = (0..edges.len()).map(|i| format!("e{i}")).collect();
        Self::new(vertices, edges.to_vec(), names).expect("valid edge list")
    }

    pub fn complete(k: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        Self::from_edges(k, &edges)
    }

    pub fn cycle(k: usize) -> Self {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Self::from_edges(k, &edges)
    }

    pub fn path(edges: usize) -> Self {
        let list: Vec<_> = (0..edges).map(|i| (i, i + 1)).collect();
        Self::from_edges(edges + 1, &list)
    }

    /// Triangular prism: two triangles joined by a perfect matching.
    pub fn prism() -> Self {
        Self::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Subgraph on the given edges, vertices relabeled densely in order of
    /// first appearance. Returns the subgraph and the original id of each new edge.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> (Multigraph, Vec<usize>) {
        let mut relabel = vec![usize::MAX; self.vertices];
        let mut next = 0;
        let mut edges = Vec::with_capacity(edge_ids.len());
        let mut names = Vec::with_capacity(edge_ids.len());
        for &id in edge_ids {
            let (u, v) = self.edges[id];
            for x in [u, v] {
                if relabel[x] == usize::MAX {
                    relabel[x] = next;
                    next += 1;
                }
            }
            edges.push((relabel[u], relabel[v]));
            names.push(self.names[id].clone());
        }
        (
            Multigraph {
                vertices: next,
                edges,
                names,
            },
            edge_ids.to_vec(),
        )
    }

    /// Number of connected components of `(V, E - removed)`, counting isolated vertices.
    pub fn components_without(&self, removed: &[usize]) -> usize {
        let mut skip = vec![false; self.edges.len()];
        for &e in removed {
            skip[e] = true;
        }
        let mut dsu = DisjointSets::new(self.vertices);
        let mut merges = 0;
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if !skip[id] && dsu.union(u, v) {
                merges += 1;
            }
        }
        self.vertices - merges
    }

    pub fn is_connected(&self) -> bool {
        self.vertices <= 1 || self.components_without(&[]) == 1
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Bridges and the edge sets of the 2-edge-connected components of the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeDecomposition {
    pub bridges: Vec<usize>,
    /// Edge ids per component, each sorted; components ordered by smallest edge.
    pub components: Vec<Vec<usize>>,
}

/// Lowlink bridge detection (iterative DFS, parallel edges handled by edge id).
pub fn bridges_and_2ecc(g: &Multigraph) -> BridgeDecomposition {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
    }
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_bridge = vec![false; g.edge_count()];
    let mut counter = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // Frame: (vertex, edge used to enter, next adjacency index).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, id) = adj[v][*next];
                *next += 1;
                if id == via {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        is_bridge[via] = true;
                    }
                }
            }
        }
    }
    let bridges: Vec<usize> = (0..g.edge_count()).filter(|&e| is_bridge[e]).collect();
    let mut dsu = DisjointSets::new(n);
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if !is_bridge[id] {
            dsu.union(u, v);
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (id, &(u, _)) in g.edges().iter().enumerate() {
        if is_bridge[id] {
            continue;
        }
        let r = dsu.find(u);
        if by_root[r].is_empty() {
            roots.push(r);
        }
        by_root[r].push(id);
    }
    let components = roots.into_iter().map(|r| std::mem::take(&mut by_root[r])).collect();
    BridgeDecomposition { bridges, components }
}

/// True iff the graph is connected and no set of fewer than `k` edges
/// disconnects it. Exhaustive over edge subsets; intended for `k <= 3`.
pub fn is_k_edge_connected(g: &Multigraph, k: usize) -> bool {
    if !g.is_connected() {
        return false;
    }
    let m = g.edge_count();
    for size in 1..k {
        let mut ok = true;
        crate::matroid::for_each_combination(m, size, |cut| {
            if g.components_without(cut) > 1 {
                ok = false;
            }
            ok
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Series classes of a 2-edge-connected graph: `e ~ f` iff `{e, f}` is a
/// minimal edge cut. Each class is sorted; classes ordered by smallest edge.
pub fn series_classes(g: &Multigraph) -> Result<Vec<Vec<usize>>> {
    if !is_k_edge_connected(g, 2) {
        return Err(Error::Connectivity {
            required: 2,
            detail: "series classes need a connected, bridgeless graph".into(),
        });
    }
    let m = g.edge_count();
    let mut class_of = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for e in 0..m {
        if class_of[e] != usize::MAX {
            continue;
        }
        class_of[e] = classes.len();
        let mut class = vec![e];
        for f in e + 1..m {
            if class_of[f] == usize::MAX && g.components_without(&[e, f]) > 1 {
                class_of[f] = classes.len();
                class.push(f);
            }
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Result of contracting all but one edge in each series class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesContraction {
    pub graph: Multigraph,
    /// Original edge id of each edge of `graph` (the lowest id of its class).
    pub representative: Vec<usize>,
    /// Original series class of each edge of `graph`.
    pub classes: Vec<Vec<usize>>,
}

/// Contracts all but the lowest-index edge of every series class of a
/// 2-edge-connected graph; the result is checked to be 3-edge-connected.
pub fn series_contract(g: &Multigraph) -> Result<SeriesContraction> {
    let classes = series_classes(g)?;
    let mut dsu = DisjointSets::new(g.vertex_count());
    for class in &classes {
        for &e in &class[1..] {
            let (u, v) = g.edge(e);
            dsu.union(u, v);
        }
    }
    let mut relabel = vec![usize::MAX; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        let r = dsu.find(v);
        if relabel[r] == usize::MAX {
            relabel[r] = next;
            next += 1;
        }
    }
    let mut edges = Vec::with_capacity(classes.len());
    let mut names = Vec::with_capacity(classes.len());
    let mut representative = Vec::with_capacity(classes.len());
    for class in &classes {
        let rep = class[0];
        let (u, v) = g.edge(rep);
        edges.push((relabel[dsu.find(u)], relabel[dsu.find(v)]));
        names.push(g.names()[rep].clone());
        representative.push(rep);
    }
    let graph = Multigraph::new(next, edges, names)?;
    if !is_k_edge_connected(&graph, 3) {
        return Err(Error::Internal(
            "series contraction did not produce a 3-edge-connected graph".into(),
        ));
    }
    Ok(SeriesContraction {
        graph,
        representative,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_edges_are_all_bridges() {
        let d = bridges_and_2ecc(&Multigraph::path(2));
        assert_eq!(d.bridges, vec![0, 1]);
        assert!(d.components.is_empty());
    }

    #[test]
    fn triangle_has_one_component() {
        let d = bridges_and_2ecc(&Multigraph::cycle(3));
        assert!(d.bridges.is_empty());
        assert_eq!(d.components, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn joined_triangles() {
        let g = Multigraph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
        );
        let d = bridges_and_2ecc(&g);
        assert_eq!(d.bridges, vec![3]);
        assert_eq!(d.components, vec![vec![0, 1, 2], vec![4, 5, 6]]);
    }

    #[test]
    fn parallel_edges_and_loops_are_not_bridges() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 2)]);
        let d = bridges_and_2ecc(&g);
        assert_eq!(d.bridges, vec![2]);
        assert_eq!(d.components, vec![vec![0, 1], vec![3]]);
    }

    fn brute_force_bridges(g: &Multigraph) -> Vec<usize> {
        let base = g.components_without(&[]);
        (0..g.edge_count())
            .filter(|&e| g.components_without(&[e]) > base)
            .collect()
    }

    #[test]
    fn bridges_match_brute_force() {
        let graphs = [
            Multigraph::prism(),
            Multigraph::complete(4),
            Multigraph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 5), (5, 6), (6, 4), (6, 6)]),
            Multigraph::from_edges(4, &[(0, 1), (1, 2), (1, 2), (2, 3)]),
        ];
        for g in &graphs {
            assert_eq!(bridges_and_2ecc(g).bridges, brute_force_bridges(g));
        }
    }

    #[test]
    fn cycle_contracts_to_a_single_loop() {
        let c = series_contract(&Multigraph::cycle(5)).unwrap();
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edges(), &[(0, 0)]);
        assert_eq!(c.classes, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn k4_is_unchanged() {
        let k4 = Multigraph::complete(4);
        assert!(is_k_edge_connected(&k4, 3));
        let c = series_contract(&k4).unwrap();
        assert_eq!(c.graph.edge_count(), 6);
        assert_eq!(c.graph.vertex_count(), 4);
        assert_eq!(c.representative, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn theta_graph_contracts_to_triple_edge() {
        // Vertices 0 and 1 joined by three paths of two edges.
        let g = Multigraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let c = series_contract(&g).unwrap();
        assert_eq!(c.classes, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert_eq!(c.graph.vertex_count(), 2);
        assert!(c.graph.edges().iter().all(|&(u, v)| u != v));
    }

    #[test]
    fn series_contract_rejects_bridges() {
        assert!(matches!(
            series_contract(&Multigraph::path(2)),
            Err(Error::Connectivity { required: 2, .. })
        ));
    }
}
