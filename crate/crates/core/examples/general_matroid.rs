// The principal-minor algorithm on a matroid that is not uniformly dense.

use matsec::algorithms::PrincipalMinorsAlgorithm;
use matsec::experiments::{simulate, ExperimentConfig};
use matsec::rational::format_rational;
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    let m = fixture("k5-pendant-path").expect("fixture").oracle();
    let alg = PrincipalMinorsAlgorithm::new(m, None)?;
    for (i, part) in alg.sequence().parts.iter().enumerate() {
        println!(
            "minor {}: elements {part:?}, rank {}, density {}",
            i + 1,
            alg.sequence().ranks[i],
            format_rational(&alg.sequence().critical_values[i])
        );
    }

    let mut config = ExperimentConfig::new("zoo:k5-pendant-path", "alg2", "geometric:4/5")?;
    config.trials = 20_000;
    let r = simulate(&config)?;
    println!(
        "E[OPT] {:.4}  E[ALG] {:.4}  ratio {:.3} +- {:.3}",
        r.opt,
        r.alg,
        r.ratio.unwrap_or(f64::INFINITY),
        r.ratio_stderr.unwrap_or(0.0)
    );
    if let Some(b) = r.bound {
        println!("{}: margin {:.3} ({})", b.statement, b.margin, if b.passed { "holds" } else { "violated" });
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
