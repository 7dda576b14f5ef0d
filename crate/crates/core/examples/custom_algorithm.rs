// Writing your own online algorithm against the comparison-only interface.
//
// This one accepts every arriving element that beats everything seen before
// it, as long as the accepted set stays independent.

use matsec::experiments::weight_generator;
use matsec::harness::{
    inclusion_profile, run_trials, Decision, OnlineAlgorithm, Randomness, RevealContext, StartInfo,
    Strategy, Token,
};
use matsec::rational::format_rational;
use matsec::zoo::fixture;

#[derive(Debug)]
struct RecordBreaker;

struct Run {
    best: Option<Token>,
}

impl OnlineAlgorithm for Run {
    fn start(&mut self, _: &StartInfo<'_>, _: &mut dyn Randomness) -> matsec::Result<()> {
        Ok(())
    }

    fn reveal(
        &mut self,
        token: Token,
        ctx: &mut RevealContext<'_>,
        _: &mut dyn Randomness,
    ) -> matsec::Result<Decision> {
        let record = self.best.map_or(true, |b| ctx.heavier(token, b));
        if record {
            self.best = Some(token);
        }
        Ok(if record && ctx.can_accept(token) {
            Decision::Accept
        } else {
            Decision::Reject
        })
    }
}

impl Strategy for RecordBreaker {
    fn name(&self) -> String {
        "record-breaker".into()
    }

    fn spawn(&self) -> Box<dyn OnlineAlgorithm + '_> {
        Box::new(Run { best: None })
    }
}

pub fn run() -> matsec::Result<()> {
    let m = fixture("k4").expect("fixture").oracle();
    let weights = weight_generator("geometric:1/2", 6, 0)?;
    let e = inclusion_profile(&*m, &RecordBreaker)?.expectation(&weights)?;
    println!(
        "exact: E[ALG] = {}, E[OPT] = {}",
        format_rational(&e.alg),
        format_rational(&e.opt)
    );
    let trials = run_trials(&*m, &weights, &RecordBreaker, 0, 10_000)?;
    let mean = trials.iter().map(|t| t.accepted_weight).sum::<f64>() / trials.len() as f64;
    println!("simulated: E[ALG] ~ {mean:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
