//! Small named instances used by the verification suites, the examples and
//! the CLI (`--matroid zoo:<name>`).

use super::{
    CographicMatroid, Field, GraphicMatroid, Instance, LinearMatroid, Multigraph, PartitionMatroid,
    UniformMatroid,
};
use crate::rational::int;

/// Every fixture name, smallest ground sets first within each family.
pub const FIXTURE_NAMES: &[&str] = &[
    "u1-2",
    "u2-3",
    "u2-4",
    "u1-5",
    "u4-8",
    "free-3",
    "partition-5",
    "u1-3+free-2",
    "u1-4+u3-5+free-3",
    "triangle",
    "triangle-pendant",
    "double-edge-triangle",
    "c5",
    "k4",
    "k4-cographic",
    "prism",
    "prism-cographic",
    "k5",
    "k5-pendant-path",
    "k6",
    "fano",
    "sparse-4x6",
];

fn graphic(g: Multigraph) -> Instance {
    Instance::Graphic(GraphicMatroid::new(g))
}

fn uniform(n: usize, r: usize) -> Instance {
    Instance::Uniform(UniformMatroid::new(n, r).expect("valid uniform fixture"))
}

fn matrix(rows: &[&[i64]], field: Field) -> Instance {
    let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    Instance::Linear(LinearMatroid::from_rows(rows, field).expect("valid matrix fixture"))
}

/// Builds the named fixture.
pub fn fixture(name: &str) -> Option<Instance> {
    Some(match name {
        "u1-2" => uniform(2, 1),
        "u2-3" => uniform(3, 2),
        "u2-4" => uniform(4, 2),
        "u1-5" => uniform(5, 1),
        "u4-8" => uniform(8, 4),
        "free-3" => Instance::Uniform(UniformMatroid::free(3)),
        "partition-5" => Instance::Partition(
            PartitionMatroid::new(vec![(vec![0, 1, 2], 1), (vec![3, 4], 2)]).expect("valid partition"),
        ),
        "u1-3+free-2" => Instance::DirectSum(vec![uniform(3, 1), Instance::Uniform(UniformMatroid::free(2))]),
        "u1-4+u3-5+free-3" => Instance::DirectSum(vec![
            uniform(4, 1),
            uniform(5, 3),
            Instance::Uniform(UniformMatroid::free(3)),
        ]),
        "triangle" => graphic(Multigraph::cycle(3)),
        "triangle-pendant" => graphic(Multigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])),
        "double-edge-triangle" => graphic(Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (0, 2)])),
        "c5" => graphic(Multigraph::cycle(5)),
        "k4" => graphic(Multigraph::complete(4)),
        "k4-cographic" => Instance::Cographic(CographicMatroid::new(Multigraph::complete(4))),
        "prism" => graphic(Multigraph::prism()),
        "prism-cographic" => Instance::Cographic(CographicMatroid::new(Multigraph::prism())),
        "k5" => graphic(Multigraph::complete(5)),
        "k5-pendant-path" => {
            let mut edges = Multigraph::complete(5).edges().to_vec();
            edges.extend([(4, 5), (5, 6), (6, 7)]);
            graphic(Multigraph::from_edges(8, &edges))
        }
        "k6" => graphic(Multigraph::complete(6)),
        "fano" => matrix(
            &[&[1, 0, 0, 1, 1, 0, 1], &[0, 1, 0, 1, 0, 1, 1], &[0, 0, 1, 0, 1, 1, 1]],
            Field::Gf2,
        ),
        "sparse-4x6" => matrix(
            &[
                &[1, 0, 2, 0, 1, 0],
                &[0, 1, 1, 0, 0, 3],
                &[3, 0, 0, 1, 0, 1],
                &[0, 2, 0, 1, 1, 0],
            ],
            Field::Rational,
        ),
        _ => return None,
    })
}

/// All fixtures with at most `max_n` elements.
pub fn fixtures_up_to(max_n: usize) -> Vec<(&'static str, Instance)> {
    FIXTURE_NAMES
        .iter()
        .map(|&name| (name, fixture(name).expect("listed fixture exists")))
        .filter(|(_, i)| i.oracle().ground_size() <= max_n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_axioms, full_rank};

    #[test]
    fn every_listed_fixture_builds_a_matroid() {
        for (name, instance) in fixtures_up_to(usize::MAX) {
            let m = instance.oracle();
            if m.ground_size() <= 10 {
                check_axioms(&*m).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn sizes_and_ranks() {
        let sr = |name: &str| {
            let m = fixture(name).unwrap().oracle();
            (m.ground_size(), full_rank(&*m))
        };
        assert_eq!(sr("k4"), (6, 3));
        assert_eq!(sr("k4-cographic"), (6, 3));
        assert_eq!(sr("k6"), (15, 5));
        assert_eq!(sr("k5-pendant-path"), (13, 7));
        assert_eq!(sr("u1-4+u3-5+free-3"), (12, 7));
        assert_eq!(sr("fano"), (7, 3));
        assert_eq!(sr("prism-cographic"), (9, 4));
    }
}
