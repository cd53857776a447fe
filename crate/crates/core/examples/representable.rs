//! Motif-represented schemes and the clique scheme.

use fclust::flat::triangle_with_center;
use fclust::{cluster_flat, collinear, delta_space, CategoryTag, FlatScheme, MotifSet};

fn main() -> fclust::Result<()> {
    let x = collinear(&[0.0, 1.0, 2.0, 5.0, 5.5, 6.0, 9.0])?;

    let rips = cluster_flat(&FlatScheme::Rips { delta: 1.0 }, &x)?;
    let pairs = MotifSet::deltas(&[2], 1.0, CategoryTag::Inj, false)?;
    let rep = cluster_flat(&FlatScheme::Representable(pairs), &x)?;
    println!("Rips(1):        {:?}", rips.blocks());
    println!("Δ_2(1) motifs:  {:?}", rep.blocks());

    let triples = MotifSet::deltas(&[3], 1.0, CategoryTag::Inj, false)?;
    println!("Δ_3(1) motifs:  {:?}", cluster_flat(&FlatScheme::Representable(triples), &x)?.blocks());

    for m in [2, 3] {
        let p = cluster_flat(&FlatScheme::Clique { m, delta: 1.0 }, &x)?;
        println!("clique m={m}:    {:?}", p.blocks());
    }

    let motif = triangle_with_center(2.0)?;
    let set = MotifSet::new(vec![motif, delta_space(2, 1.0)?], CategoryTag::Gen, false)?;
    println!("mixed motifs:   {:?}", cluster_flat(&FlatScheme::Representable(set), &x)?.blocks());
    Ok(())
}
