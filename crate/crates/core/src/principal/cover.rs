//! Matroid partitioning by shortest augmenting paths.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{greedy_scan, require_loopless, Matroid};
use crate::zoo::{is_k_edge_connected, CographicMatroid, GraphicMatroid, Multigraph};

fn with(set: &[usize], add: usize, remove: Option<usize>) -> Vec<usize> {
    let mut v: Vec<usize> = set.iter().copied().filter(|&x| Some(x) != remove).collect();
    v.push(add);
    v
}

/// Covers the ground set by `k` independent sets.
///
/// Elements are inserted in increasing order; each insertion searches the
/// exchange graph breadth first, trying sets and displaced elements in
/// increasing index order, so the output is deterministic. When no augmenting
/// path exists, the reached elements `S` satisfy `|S| > k r(S)` and are
/// returned as the certificate.
pub fn partition_cover<M: Matroid + ?Sized>(m: &M, k: usize) -> Result<Vec<Vec<usize>>> {
    require_loopless(m)?;
    let n = m.ground_size();
    if k == 0 {
        if n == 0 {
            return Ok(Vec::new());
        }
        let all: Vec<usize> = (0..n).collect();
        return Err(Error::InfeasibleCover {
            k,
            rank: m.rank(&all),
            witness: all,
        });
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut owner: Vec<Option<usize>> = vec![None; n];

    for s in 0..n {
        // parent[y] = (x, j): x enters set j and pushes y out of it.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut sink = None;
        'search: while let Some(x) = queue.pop_front() {
            for j in 0..k {
                if owner[x] == Some(j) {
                    continue;
                }
                if m.is_independent(&with(&sets[j], x, None)) {
                    sink = Some((x, j));
                    break 'search;
                }
                let mut members = sets[j].clone();
                members.sort_unstable();
                for y in members {
                    if !seen[y] && m.is_independent(&with(&sets[j], x, Some(y))) {
                        seen[y] = true;
                        parent[y] = Some((x, j));
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some((mut x, mut j)) = sink else {
            let witness: Vec<usize> = (0..n).filter(|&e| seen[e]).collect();
            let rank = m.rank(&witness);
            if witness.len() <= k * rank {
                return Err(Error::Internal(format!(
                    "augmentation failed but {witness:?} is not a certificate (rank {rank})"
                )));
            }
            return Err(Error::InfeasibleCover { k, witness, rank });
        };
        loop {
            if let Some(old) = owner[x] {
                sets[old].retain(|&e| e != x);
            }
            sets[j].push(x);
            owner[x] = Some(j);
            match parent[x] {
                Some((prev, pj)) => {
                    x = prev;
                    j = pj;
                }
                None => break,
            }
        }
    }

    for set in &mut sets {
        set.sort_unstable();
    }
    verify_cover(m, &sets)?;
    Ok(sets)
}

fn verify_cover<M: Matroid + ?Sized>(m: &M, sets: &[Vec<usize>]) -> Result<()> {
    let mut covered = vec![false; m.ground_size()];
    for set in sets {
        if !m.is_independent(set) {
            return Err(Error::Internal(format!("cover part {set:?} is dependent")));
        }
        for &e in set {
            covered[e] = true;
        }
    }
    match covered.iter().position(|c| !c) {
        Some(e) => Err(Error::Internal(format!("element {e} left uncovered"))),
        None => Ok(()),
    }
}

/// Three cographic bases whose union is every edge, with their complementary
/// spanning trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeCobaseCover {
    pub cobases: Vec<Vec<usize>>,
    pub trees: Vec<Vec<usize>>,
}

/// Requires a 3-edge-connected graph. Covers the edges by three independent
/// sets of the cographic matroid and extends each to a cobase.
pub fn three_cobase_cover(g: &Multigraph) -> Result<ThreeCobaseCover> {
    if !is_k_edge_connected(g, 3) {
        let detail = if g.is_connected() {
            "some cut has fewer than 3 edges".to_string()
        } else {
            "graph is disconnected".to_string()
        };
        return Err(Error::Connectivity {
            required: 3,
            detail,
        });
    }
    let co = CographicMatroid::new(g.clone());
    let parts = partition_cover(&co, 3)?;
    let m = g.edge_count();
    let all: Vec<usize> = (0..m).collect();
    let mut cobases = Vec::with_capacity(3);
    let mut trees = Vec::with_capacity(3);
    for part in parts {
        let mut order = part.clone();
        order.extend(all.iter().copied().filter(|e| !part.contains(e)));
        let mut cobase = greedy_scan(&co, &order);
        cobase.sort_unstable();
        let tree: Vec<usize> = all.iter().copied().filter(|e| !cobase.contains(e)).collect();
        cobases.push(cobase);
        trees.push(tree);
    }

    let graphic = GraphicMatroid::new(g.clone());
    let tree_size = g.vertex_count().saturating_sub(1);
    for tree in &trees {
        if tree.len() != tree_size || !graphic.is_independent(tree) {
            return Err(Error::Internal(format!("{tree:?} is not a spanning tree")));
        }
    }
    if let Some(e) = all.iter().find(|e| trees.iter().all(|t| t.contains(e))) {
        return Err(Error::Internal(format!("edge {e} lies in all three trees")));
    }
    Ok(ThreeCobaseCover { cobases, trees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{full_rank, mask_elements};
    use crate::zoo::UniformMatroid;

    /// Edmonds: a cover by `k` sets exists iff `k r(X) >= |X|` for every `X`.
    fn coverable<M: Matroid>(m: &M, k: usize) -> bool {
        (1u64..1 << m.ground_size()).all(|mask| {
            let x = mask_elements(mask);
            k * m.rank(&x) >= x.len()
        })
    }

    #[test]
    fn cover_examples() {
        assert_eq!(partition_cover(&UniformMatroid::free(4), 1).unwrap(), vec![vec![0, 1, 2, 3]]);
        let mut parts = partition_cover(&UniformMatroid::new(3, 1).unwrap(), 3).unwrap();
        parts.sort();
        assert_eq!(parts, vec![vec![0], vec![1], vec![2]]);
        let k4 = GraphicMatroid::new(Multigraph::complete(4));
        let parts = partition_cover(&k4, 2).unwrap();
        assert_eq!(parts.iter().map(Vec::len).sum::<usize>(), 6);
    }

    #[test]
    fn infeasible_cover_has_certificate() {
        let k4 = GraphicMatroid::new(Multigraph::complete(4));
        match partition_cover(&k4, 1) {
            Err(Error::InfeasibleCover { k, witness, rank }) => {
                assert_eq!(k, 1);
                assert!(witness.len() > rank);
                assert_eq!(k4.rank(&witness), rank);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            partition_cover(&UniformMatroid::new(2, 0).unwrap(), 5),
            Err(Error::HasLoops(_))
        ));
    }

    #[test]
    fn cover_agrees_with_edmonds_condition() {
        let graphs = [
            Multigraph::complete(4),
            Multigraph::complete(5),
            Multigraph::prism(),
            Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (0, 2)]),
        ];
        for g in graphs {
            let m = GraphicMatroid::new(g);
            for k in 1..=4 {
                assert_eq!(partition_cover(&m, k).is_ok(), coverable(&m, k), "k = {k}");
            }
            assert!(full_rank(&m) > 0);
        }
    }

    #[test]
    fn three_cobase_examples() {
        for g in [Multigraph::complete(4), Multigraph::prism()] {
            let c = three_cobase_cover(&g).unwrap();
            assert_eq!(c.cobases.len(), 3);
            let mut union: Vec<usize> = c.cobases.concat();
            union.sort_unstable();
            union.dedup();
            assert_eq!(union.len(), g.edge_count());
        }
        let theta3 = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let c = three_cobase_cover(&theta3).unwrap();
        assert!(c.trees.iter().all(|t| t.len() == 1));
        assert!(c.cobases.iter().all(|b| b.len() == 2));

        let theta = Multigraph::from_edges(
            4,
            &[(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)],
        );
        assert!(matches!(three_cobase_cover(&theta), Err(Error::Connectivity { .. })));
    }
}
