// Exact expectations by enumerating assignments, arrivals and internal coin flips.

use matsec::algorithms::{Classical, ThresholdAlgorithm};
use matsec::constants::inv_two_e;
use matsec::experiments::weight_generator;
use matsec::harness::inclusion_profile;
use matsec::rational::{format_rational, ratio, to_f64};
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    // U(1,2) with p = 1/2: ((1-p)^2 (w1+w2) + 2p(1-p) w1) / 2 = 3/8 w1 + 1/8 w2.
    let u12 = fixture("u1-2").expect("fixture").oracle();
    let alg = ThresholdAlgorithm::new(ratio(1, 2), 1)?;
    let profile = inclusion_profile(&*u12, &alg)?;
    let probs: Vec<String> = profile.alg_probabilities().iter().map(format_rational).collect();
    println!("U(1,2), p = 1/2: acceptance probability by weight rank {probs:?}");

    let u24 = fixture("u2-4").expect("fixture").oracle();
    let alg = ThresholdAlgorithm::for_matroid(&*u24, None)?;
    let profile = inclusion_profile(&*u24, &alg)?;
    for w in ["one-heavy", "geometric:1/2", "equal"] {
        let weights = weight_generator(w, 4, 0)?;
        let e = profile.expectation(&weights)?;
        let bound = inv_two_e() * weights.top_sum(2);
        println!(
            "U(2,4) {w:<14} E[ALG] = {:.6}  E[OPT] = {:.6}  1/(2e) bound = {:.6}",
            to_f64(&e.alg),
            to_f64(&e.opt),
            to_f64(&bound)
        );
    }

    let u15 = fixture("u1-5").expect("fixture").oracle();
    let profile = inclusion_profile(&*u15, &Classical)?;
    println!(
        "classical secretary on U(1,5) takes the best element with probability {}",
        format_rational(&profile.alg_probabilities()[0])
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
