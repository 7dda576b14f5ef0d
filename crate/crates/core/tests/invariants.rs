use proptest::prelude::*;

use matsec::algorithms::{build_strategy, Params, Target, ALGORITHMS};
use matsec::experiments::{simulate, weight_generator, ExperimentConfig};
use matsec::harness::run_trial;
use matsec::matroid::{Matroid, SharedMatroid};
use matsec::zoo::{fixtures_up_to, GraphicMatroid, Multigraph, PartitionMatroid, UniformMatroid};
use std::sync::Arc;

fn subset(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn uniform() -> impl Strategy<Value = SharedMatroid> {
    (1usize..9)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_map(|(n, r)| Arc::new(UniformMatroid::new(n, r).unwrap()) as SharedMatroid)
}

fn partition() -> impl Strategy<Value = SharedMatroid> {
    prop::collection::vec((1usize..4).prop_flat_map(|size| (Just(size), 0..=size)), 1..4).prop_map(|shape| {
        let mut next = 0;
        let parts = shape
            .into_iter()
            .map(|(size, cap)| {
                let part: Vec<usize> = (next..next + size).collect();
                next += size;
                (part, cap)
            })
            .collect();
        Arc::new(PartitionMatroid::new(parts).unwrap()) as SharedMatroid
    })
}

fn graphic() -> impl Strategy<Value = SharedMatroid> {
    (2usize..6).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 1..9).prop_map(move |edges| {
            Arc::new(GraphicMatroid::new(Multigraph::from_edges(v, &edges))) as SharedMatroid
        })
    })
}

fn any_matroid() -> impl Strategy<Value = SharedMatroid> {
    prop_oneof![uniform(), partition(), graphic()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_axioms(m in any_matroid(), a in any::<u32>(), b in any::<u32>()) {
        let n = m.ground_size();
        let full = (1u32 << n) - 1;
        let (a, b) = (a & full, b & full);
        let r = |mask: u32| m.rank(&subset(mask, n));
        prop_assert_eq!(r(0), 0);
        prop_assert!(r(a) <= a.count_ones() as usize);
        prop_assert!(r(a & b) <= r(a));
        prop_assert!(r(a) + r(b) >= r(a | b) + r(a & b));
        prop_assert_eq!(m.is_independent(&subset(a, n)), r(a) == a.count_ones() as usize);
    }

    #[test]
    fn accepted_sets_are_independent(fixture in 0usize..21, alg in 0usize..9, seed in any::<u64>(), trial in 0u64..1000) {
        let fixtures = fixtures_up_to(14);
        let (_, inst) = &fixtures[fixture % fixtures.len()];
        let m = inst.oracle();
        let Ok(strategy) = build_strategy(ALGORITHMS[alg].0, &Params::new(), &Target::from_instance(inst)) else {
            return Ok(());
        };
        let w = weight_generator("exponential-iid", m.ground_size(), seed).unwrap();
        let out = run_trial(&*m, &w, &*strategy, seed, trial, false).unwrap();
        prop_assert!(m.is_independent(&out.accepted));
        prop_assert!(m.is_independent(&out.opt));
        prop_assert!(out.accepted_weight <= out.opt_weight + 1e-9);

        let again = run_trial(&*m, &w, &*strategy, seed, trial, false).unwrap();
        prop_assert_eq!(out.accepted, again.accepted);
    }

    #[test]
    fn weight_lists_are_nonincreasing(n in 1usize..30, num in 1i64..=10, seed in any::<u64>()) {
        let specs = [
            format!("geometric:{num}/10"),
            format!("one-heavy:{num}/10"),
            "equal".into(),
            "uniform-iid".into(),
            format!("exponential-iid:{num}"),
        ];
        for spec in specs {
            let w = weight_generator(&spec, n, seed).unwrap();
            prop_assert_eq!(w.len(), n);
            prop_assert!(w.exact().windows(2).all(|p| p[0] >= p[1]), "{}", spec);
        }
    }
}

#[test]
fn stderr_shrinks_with_the_square_root_of_trials() {
    let run = |trials| {
        let mut cfg = ExperimentConfig::new("zoo:k4", "alg2", "geometric:1/2").unwrap();
        cfg.trials = trials;
        cfg.seed = 21;
        simulate(&cfg).unwrap()
    };
    let (small, large) = (run(4_000), run(64_000));
    // Sixteen times the trials: a quarter of the error, up to a factor 1.5.
    for (a, b) in [(small.alg_stderr, large.alg_stderr), (small.opt_stderr, large.opt_stderr)] {
        let shrink = a / b;
        assert!((4.0 / 1.5..=4.0 * 1.5).contains(&shrink), "shrink factor {shrink}");
    }
}
