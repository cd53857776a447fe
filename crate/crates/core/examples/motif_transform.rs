//! The motif metric transform and factorization through single linkage.

use fclust::{collinear, factorize_check, motif_metric_transform, CategoryTag, MotifSet};

fn main() -> fclust::Result<()> {
    let x = collinear(&[0.0, 1.0, 2.0, 4.0, 7.0])?;
    for sizes in [&[2][..], &[3], &[3, 4]] {
        let set = MotifSet::deltas(sizes, 1.0, CategoryTag::Inj, true)?;
        let t = motif_metric_transform(&x, &set)?;
        println!("Δ_k(1) for k in {sizes:?}:");
        for row in t.table() {
            println!("  {row:?}");
        }
        println!("  factorizes: {}", factorize_check(&set, &x)?);
    }
    Ok(())
}
