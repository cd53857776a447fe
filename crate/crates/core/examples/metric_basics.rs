//! Building metric spaces, chaining at a scale and the sub-dominant ultrametric.

use fclust::{collinear, delta_space, subdominant_ultrametric, validate_metric, FiniteMetricSpace, MetricOptions};

fn main() -> fclust::Result<()> {
    let x = validate_metric(
        ["a", "b", "c", "d"],
        vec![
            vec![0.0, 1.0, 2.0, 6.0],
            vec![1.0, 0.0, 1.5, 5.0],
            vec![2.0, 1.5, 0.0, 4.0],
            vec![6.0, 5.0, 4.0, 0.0],
        ],
        false,
    )?;
    println!("separation {} diameter {}", x.separation()?, x.diameter()?);
    for delta in [1.0, 1.5, 4.0] {
        println!("chaining at {delta}: {:?}", x.components_at_scale(delta)?.blocks());
    }

    let u = subdominant_ultrametric(&x.table())?;
    println!("sub-dominant ultrametric: {u:?}");

    let q = x.quotient_at_scale(1.5)?;
    println!("quotient at 1.5 on {:?}: {:?}", q.space.labels(), q.space.table());

    match validate_metric(["p", "q", "r"], vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]], false) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }

    let pseudo = FiniteMetricSpace::new(
        vec!["u".into(), "v".into()],
        vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        MetricOptions::pseudometric(),
    )?;
    println!("pseudometric with {} points accepted", pseudo.len());

    println!("Δ_3(2) diameter {}", delta_space(3, 2.0)?.diameter()?);
    println!("line 0,1,3: d(0,3) = {}", collinear(&[0.0, 1.0, 3.0])?.dist("0", "3")?);
    Ok(())
}
