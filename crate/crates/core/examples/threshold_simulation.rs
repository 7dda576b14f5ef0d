// The threshold algorithm against its continuous-time offline simulation.

use matsec::algorithms::{alg1_offline_simulation, threshold_guarantee, ThresholdAlgorithm};
use matsec::constants::inv_sqrt_e;
use matsec::experiments::weight_generator;
use matsec::harness::{run_trials, Estimate};
use matsec::rational::to_f64;
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    let trials = 20_000;
    let m = fixture("u2-3").expect("fixture").oracle();
    let weights = weight_generator("geometric:1/2", 3, 0)?;
    let alg = ThresholdAlgorithm::for_matroid(&*m, None)?;
    let online: Vec<f64> = run_trials(&*m, &weights, &alg, 1, trials)?
        .iter()
        .map(|o| o.accepted_weight)
        .collect();
    let p = to_f64(inv_sqrt_e());
    let offline = (0..trials)
        .map(|t| alg1_offline_simulation(&*m, p, &weights, 2, t).map(|o| o.weight()))
        .collect::<matsec::Result<Vec<f64>>>()?;
    let (a, b) = (Estimate::from_samples(&online), Estimate::from_samples(&offline));
    println!("online  {:.4} +- {:.4}", a.mean, a.stderr);
    println!("offline {:.4} +- {:.4}", b.mean, b.stderr);
    println!("guarantee -p^2 ln p = {:.5}", threshold_guarantee(inv_sqrt_e()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
