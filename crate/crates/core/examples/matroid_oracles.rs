// Independence oracles, ranks, minors, duals and cocircuits on small matroids.

use std::sync::Arc;

use matsec::matroid::{
    c_star, full_rank, in_span, min_cocircuit, parallel_classes, Dual, Matroid, MinorView,
    SharedMatroid,
};
use matsec::zoo::{GraphicMatroid, Multigraph, UniformMatroid};

pub fn run() -> matsec::Result<()> {
    let k4: SharedMatroid = Arc::new(GraphicMatroid::new(Multigraph::complete(4)));
    println!("K4: n = {}, rank = {}", k4.ground_size(), full_rank(&*k4));
    println!("triangle {{0,1,3}} independent? {}", k4.is_independent(&[0, 1, 3]));
    println!("edge 3 spanned by {{0,1}}? {}", in_span(&*k4, &[0, 1], 3)?);

    // Contract edge 0 and keep the other five: a triangle with parallel edges.
    let minor = MinorView::new(k4.clone(), &[0], &[1, 2, 3, 4, 5])?;
    println!("K4 / 0: rank {}, parallel classes {:?}", full_rank(&minor), parallel_classes(&minor)?);

    let dual = Dual::new(UniformMatroid::new(5, 2)?);
    println!("dual of U(2,5) has rank {}", full_rank(&dual));

    println!("a smallest cocircuit through edge 0: {:?}", min_cocircuit(&*k4, 0)?);
    println!("c*(K4) = {}", c_star(&*k4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
