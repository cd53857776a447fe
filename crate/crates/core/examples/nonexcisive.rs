//! A scheme whose scale depends on the input, and the excision check that catches it.

use fclust::harness::{nonexcisive_scheme, nonexcisive_space};
use fclust::{cluster_flat, is_excisive_on, FlatScheme};

fn main() -> fclust::Result<()> {
    let x = nonexcisive_space();
    let scheme = nonexcisive_scheme();
    let p = cluster_flat(&scheme, &x)?;
    println!("clusters of X: {:?}", p.blocks());
    for block in p.blocks() {
        let sub = x.restrict(block)?;
        println!("  re-clustering {block:?}: {:?}", cluster_flat(&scheme, &sub)?.blocks());
    }
    match is_excisive_on(&scheme, &x)? {
        Some(w) => println!("not excisive: block {:?} splits into {:?}", w.block, w.split.blocks()),
        None => println!("excisive on X"),
    }
    let rips = FlatScheme::Rips { delta: 1.0 };
    println!("Rips(1) excisive on X: {}", is_excisive_on(&rips, &x)?.is_none());
    Ok(())
}
