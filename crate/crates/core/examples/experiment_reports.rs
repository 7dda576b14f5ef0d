// Configured experiments with their competitive guarantee, rendered as CSV and JSON.

use matsec::experiments::{exact, render, simulate, ExperimentConfig, Format};

pub fn run() -> matsec::Result<()> {
    let mut config = ExperimentConfig::new("zoo:k4-cographic", "cographic", "one-heavy")?;
    let r = exact(&config)?;
    print!("{}", render(&r, Format::Csv)?);

    config.params.insert("variant".into(), "pure".into());
    config.trials = 5_000;
    config.seed = 11;
    let r = simulate(&config)?;
    print!("{}", render(&r, Format::Json)?);

    let reject = ExperimentConfig::new("zoo:u2-4", "reject-all", "equal")?;
    let r = simulate(&reject)?;
    println!("reject-all: ratio {:?}, infinite = {}", r.ratio, r.ratio_infinite);
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
