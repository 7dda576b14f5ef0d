// Running the verification suites and reading their checks.

use matsec::experiments::{run_suite, SuiteOptions, SUITES};
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    let opts = SuiteOptions { trials: 5_000, seed: 0 };
    for (suite, _) in SUITES {
        let instances = match *suite {
            // Keep the example quick: one small instance per suite.
            "greedy-selection" => vec![("u4-8".to_string(), fixture("u4-8").expect("fixture"))],
            "threshold-bound" => vec![("u2-4".to_string(), fixture("u2-4").expect("fixture"))],
            _ => vec![("triangle-pendant".to_string(), fixture("triangle-pendant").expect("fixture"))],
        };
        let report = run_suite(suite, Some(instances), &opts)?;
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        println!("{suite:<24} {} checks, {failed} failed", report.checks.len());
        if let Some(c) = report.checks.first() {
            let constant = c.constant.as_ref().map(|k| format!(" [{} = {:.5}]", k.name, k.approx));
            println!("    e.g. {}: {} vs {}{}", c.check, c.measured, c.bound, constant.unwrap_or_default());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
