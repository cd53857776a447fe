//! Morphism search and the least scale at which a motif fits into a space.

use fclust::{collinear, compose, delta_space, exists_morphism, minimal_scale, CategoryTag, MetricMap, SearchLimits};

fn main() -> fclust::Result<()> {
    let limits = SearchLimits::default();
    let x = collinear(&[0.0, 1.0, 2.5, 6.0])?;
    let triangle = delta_space(3, 1.0)?;

    for tag in [CategoryTag::Iso, CategoryTag::Inj, CategoryTag::Gen] {
        let found = exists_morphism(&triangle, &x, tag, None, &limits)?;
        println!("Δ_3(1) -> X over {tag:?}: {}", found.is_some());
        let lambda = minimal_scale(&triangle, &x, tag, None, &limits)?;
        println!("  least scale {lambda}");
    }

    let pinned = minimal_scale(&delta_space(2, 1.0)?, &x, CategoryTag::Inj, Some(("0", "6")), &limits)?;
    println!("least scale of Δ_2(1) touching 0 and 6: {pinned}");

    let point = delta_space(1, 1.0)?;
    let f = MetricMap::constant(&x, &point, &point.labels()[0])?;
    let id = MetricMap::identity(&x);
    let g = compose(&id, &f)?;
    println!("collapse after identity is a GEN morphism: {}", g.is_morphism(CategoryTag::Gen));
    println!("and an INJ morphism: {}", g.is_morphism(CategoryTag::Inj));
    Ok(())
}
