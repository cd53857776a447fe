//! Single linkage as a persistent set, its slices and its DOT rendering.

use fclust::{collinear, single_linkage_functor};

fn main() -> fclust::Result<()> {
    let x = collinear(&[0.0, 1.0, 3.0, 3.5, 8.0])?;
    let theta = single_linkage_functor(&x);
    println!("breakpoints: {:?}", theta.breakpoints());
    for r in [0.0, 0.5, 1.0, 2.0, 4.5] {
        println!("slice at {r}: {:?}", theta.slice(r)?.blocks());
    }
    println!("dendrogram: {}", theta.is_dendrogram());
    println!("{}", fclust::io::to_json(&theta));
    println!("{}", theta.to_dot());
    Ok(())
}
