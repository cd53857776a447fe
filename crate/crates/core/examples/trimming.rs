//! Density-sensitive hierarchies: trimming small classes and the clique-transformed single linkage.

use fclust::{collinear, rips_delta_m, single_linkage_functor, trim_functor};

fn main() -> fclust::Result<()> {
    let x = collinear(&[0.0, 1.0, 2.0, 3.0, 10.0, 11.0])?;
    println!("single linkage: {:?}", single_linkage_functor(&x).breakpoints());
    for m in [2, 3] {
        let trimmed = trim_functor(&x, m)?;
        println!("trim {m}:");
        for level in trimmed.levels() {
            println!("  from {}: {:?}", level.from, level.partition.blocks());
        }
    }
    let r3 = rips_delta_m(&x, 3)?;
    println!("clique m=3:");
    for level in r3.levels() {
        println!("  from {}: {:?}", level.from, level.partition.blocks());
    }
    Ok(())
}
