// Algorithms that never look at weights beyond comparisons, for the
// adversarial-assignment setting: cographic, low density, greedy, column sparse.

use matsec::algorithms::{
    ColumnSparseAlgorithm, CographicAlgorithm, CographicVariant, GreedyCocircuit, LowDensityAlgorithm,
};
use matsec::harness::{zero_info_profile, Strategy};
use matsec::matroid::{c_star, SharedMatroid};
use matsec::rational::format_rational;
use matsec::zoo::{fixture, Instance, Multigraph};

fn report(label: &str, m: &SharedMatroid, alg: &dyn Strategy) -> matsec::Result<()> {
    // The adversary puts the heaviest weight on element 0, the next on 1, and so on.
    let sigma: Vec<usize> = (0..m.ground_size()).collect();
    let profile = zero_info_profile(&**m, alg, &sigma)?;
    let probs: Vec<String> = profile.alg_probabilities().iter().map(format_rational).collect();
    println!("{label:<22} P[element i accepted] = {probs:?}");
    Ok(())
}

pub fn run() -> matsec::Result<()> {
    let k4 = Multigraph::complete(4);
    let cographic = fixture("k4-cographic").expect("fixture").oracle();
    report("cographic", &cographic, &CographicAlgorithm::new(&k4, CographicVariant::Secretary)?)?;
    report("cographic, pure bases", &cographic, &CographicAlgorithm::new(&k4, CographicVariant::PureBases)?)?;

    let triangle = fixture("triangle").expect("fixture").oracle();
    report("low density", &triangle, &LowDensityAlgorithm::new(triangle.clone(), false)?)?;
    report("greedy", &triangle, &GreedyCocircuit)?;
    println!("c*(triangle) = {}", c_star(&*triangle)?);

    let Some(Instance::Linear(a)) = fixture("sparse-4x6") else { unreachable!() };
    let sparse: SharedMatroid = std::sync::Arc::new(a.clone());
    let alg = ColumnSparseAlgorithm::new(a);
    println!("column sparsity k = {}", alg.sparsity());
    report("column sparse", &sparse, &alg)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
