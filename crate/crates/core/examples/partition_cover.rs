// Covering a matroid by k independent sets, infeasibility certificates, and
// three cobases covering a 3-edge-connected graph.

use matsec::matroid::full_rank;
use matsec::principal::{partition_cover, three_cobase_cover};
use matsec::zoo::{fixture, GraphicMatroid, Multigraph};
use matsec::Error;

pub fn run() -> matsec::Result<()> {
    let k4 = GraphicMatroid::new(Multigraph::complete(4));
    println!("K4 in two forests: {:?}", partition_cover(&k4, 2)?);
    match partition_cover(&k4, 1) {
        Err(Error::InfeasibleCover { witness, rank, .. }) => {
            println!("one forest is not enough: |{witness:?}| = {} > rank {rank}", witness.len())
        }
        other => println!("unexpected: {other:?}"),
    }

    let prism = Multigraph::prism();
    let cover = three_cobase_cover(&prism)?;
    for (cobase, tree) in cover.cobases.iter().zip(&cover.trees) {
        println!("cobase {cobase:?}  complement tree {tree:?}");
    }

    let cographic = fixture("k4-cographic").expect("fixture").oracle();
    println!("cographic K4 has rank {}", full_rank(&*cographic));
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
