// The comparison-only logarithmic-rank algorithm.

use matsec::algorithms::{exponent_choices, level_grid, LogRankAlgorithm};
use matsec::experiments::weight_generator;
use matsec::harness::{run_trials, Estimate};
use matsec::matroid::full_rank;
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    println!("rank 12 known: exponents {:?}, grid {:?}", exponent_choices(Some(12), 0), level_grid(2));
    println!("rank unknown, sample optimum of size 5: exponents {:?}", exponent_choices(None, 5));

    let m = fixture("k6").expect("fixture").oracle();
    let weights = weight_generator("exponential-iid", m.ground_size(), 9)?;
    for (label, alg) in [
        ("rank known", LogRankAlgorithm::new(Some(full_rank(&*m)))),
        ("rank unknown", LogRankAlgorithm::new(None)),
    ] {
        let outcomes = run_trials(&*m, &weights, &alg, 3, 5_000)?;
        let alg_w: Vec<f64> = outcomes.iter().map(|o| o.accepted_weight).collect();
        let opt_w: Vec<f64> = outcomes.iter().map(|o| o.opt_weight).collect();
        let (a, o) = (Estimate::from_samples(&alg_w), Estimate::from_samples(&opt_w));
        println!("{label:<13} E[ALG] {:.3}  E[OPT] {:.3}  ratio {:.2}", a.mean, o.mean, o.mean / a.mean);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
