// Reading instance files: uniform, partition, graphs, cographs, matrices and direct sums.

use std::path::Path;

use matsec::matroid::full_rank;
use matsec::zoo::parse_instance_file;

pub fn run() -> matsec::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for file in [
        "u2_4.mat",
        "partition.mat",
        "k4.mat",
        "k4_cographic.mat",
        "fano.mat",
        "sparse.mat",
        "sum.mat",
    ] {
        let instance = parse_instance_file(&dir.join(file))?;
        let m = instance.oracle();
        println!(
            "{file:<20} {:<9} n = {:>2}  rank = {}",
            instance.kind(),
            m.ground_size(),
            full_rank(&*m)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> matsec::Result<()> {
    run()
}
