// Densities, the principal sequence and its uniformly dense minors.

use matsec::principal::{
    check_principal_sequence, density, f_lambda_minimizers, principal_minors, principal_sequence,
};
use matsec::rational::{format_rational, ratio};
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    let m = fixture("triangle-pendant").expect("fixture").oracle();
    let d = density(&*m)?;
    println!("density {} attained by {:?}", format_rational(&d.value), d.witness);

    let seq = principal_sequence(&*m)?;
    let lambdas: Vec<String> = seq.critical_values.iter().map(format_rational).collect();
    println!("sets {:?}, critical values {:?}", seq.sets, lambdas);

    let at = f_lambda_minimizers(&*m, &ratio(3, 2))?;
    println!("f at 3/2: minimal {:?}, maximal {:?}", at.minimal, at.maximal);

    for (i, minor) in principal_minors(&m)?.iter().enumerate() {
        println!("minor {}: density {}", i + 1, format_rational(&density(minor)?.value));
    }
    for c in check_principal_sequence(&m, &seq)? {
        println!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
