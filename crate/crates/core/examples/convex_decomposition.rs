// Writing the all-1/gamma vector as a convex combination of independent sets.

use matsec::principal::{convex_decomposition, polytope_slack, Limits};
use matsec::rational::format_rational;
use matsec::zoo::fixture;

pub fn run() -> matsec::Result<()> {
    for name in ["triangle", "k4", "triangle-pendant"] {
        let m = fixture(name).expect("fixture").oracle();
        let d = convex_decomposition(&*m)?;
        d.verify(&*m)?;
        println!("{name}: gamma = {}, {} terms", format_rational(&d.gamma), d.terms.len());
        for t in &d.terms {
            println!("  {} x {:?}", format_rational(&t.coefficient), t.set);
        }
        let (slack, tight) = polytope_slack(&*m, &d.point(m.ground_size()), &Limits::default())?;
        println!("  min r(X) - x(X) = {} at {tight:?}", format_rational(&slack));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
