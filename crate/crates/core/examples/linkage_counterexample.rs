//! Complete and average linkage break under a distance non-increasing map; single linkage does not.

use fclust::harness::linkage_counterexample;
use fclust::{agglomerative, is_persistence_preserving, Linkage};

fn main() -> fclust::Result<()> {
    let (x, y, f) = linkage_counterexample();
    println!("map: {f:?}");
    for linkage in [Linkage::Single, Linkage::Complete, Linkage::Average] {
        let tx = agglomerative(&x, linkage);
        let ty = agglomerative(&y, linkage);
        match is_persistence_preserving(&f, &tx, &ty)? {
            None => println!("{linkage:?}: preserved"),
            Some(w) => println!(
                "{linkage:?}: broken on [{}, {}) at scale {}: {:?} does not refine {:?}",
                w.from,
                w.to,
                w.scale,
                w.source.blocks(),
                w.pulled_back.blocks()
            ),
        }
    }
    Ok(())
}
