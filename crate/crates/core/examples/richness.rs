//! Every partition is realized by Rips, and every dendrogram by single linkage.

use fclust::harness::generate_dendrograms;
use fclust::{cluster_flat, dendrogram_to_ultrametric, richness_witness, single_linkage_functor, FlatScheme, Partition};

fn main() -> fclust::Result<()> {
    let labels: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
    let target = Partition::new(labels, vec![vec!["a".into(), "c".into()], vec!["b".into()], vec!["d".into(), "e".into()]])?;
    let w = richness_witness(&target, 1.0, 3.0)?;
    let got = cluster_flat(&FlatScheme::Rips { delta: 1.0 }, &w)?;
    println!("target {:?}, Rips on witness {:?}", target.blocks(), got.blocks());

    for theta in generate_dendrograms(3, 6, 11)? {
        let u = dendrogram_to_ultrametric(&theta)?;
        let back = single_linkage_functor(&u);
        println!("dendrogram {:?} round-trips: {}", theta.breakpoints(), back == theta);
    }
    Ok(())
}
