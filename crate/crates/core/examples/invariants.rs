//! Evaluating order-reversing invariants.

use fclust::{collinear, delta_space, evaluate_invariant, InvariantSpec};

fn main() -> fclust::Result<()> {
    let x = collinear(&[0.0, 1.5, 4.0, 4.5])?;
    let specs = [
        InvariantSpec::Separation,
        InvariantSpec::KMinus { k: 3 },
        InvariantSpec::KMinus { k: 5 },
        InvariantSpec::KPlus { k: 4 },
        InvariantSpec::KPlus { k: 3 },
        InvariantSpec::Cardinality { values: vec![3.0, 2.0, 1.0], tail: 0.5 },
    ];
    for spec in &specs {
        println!("{spec:?}: {}", evaluate_invariant(spec, &x)?);
    }
    let omega = InvariantSpec::OmegaMinus {
        motifs: vec![delta_space(2, 1.0)?, delta_space(3, 1.0)?],
        base: fclust::invariants::BaseInvariant::Separation,
    };
    println!("omega minus: {}", evaluate_invariant(&omega, &x)?);
    Ok(())
}
