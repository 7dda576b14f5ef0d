// One seeded trial of the random-assignment model with its full transcript.

use matsec::algorithms::ThresholdAlgorithm;
use matsec::experiments::weight_generator;
use matsec::harness::run_trial;
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    let m = fixture("k4").expect("fixture").oracle();
    let weights = weight_generator("geometric:1/2", m.ground_size(), 0)?;
    let alg = ThresholdAlgorithm::for_matroid(&*m, None)?;
    let outcome = run_trial(&*m, &weights, &alg, 42, 0, true)?;
    println!(
        "accepted {:?} weighing {:.4}; optimum {:?} weighing {:.4}; {} comparisons",
        outcome.accepted, outcome.accepted_weight, outcome.opt, outcome.opt_weight, outcome.comparisons
    );
    if let Some(t) = outcome.transcript {
        println!("{}", t.to_json_line());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
