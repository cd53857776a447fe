//! Order-reversing numerical invariants of finite metric spaces.
//!
//! An invariant `I` is functorial over injective distance non-increasing
//! maps when `I(X) >= I(Y)` whenever such a map `X -> Y` exists. Values
//! live in `[0, +inf]`.

use serde::{Deserialize, Serialize};

use crate::category::{find_assignment, CategoryTag, MetricMap, Ratio, SearchLimits};
use crate::error::{invalid, Error, Result};
use crate::metric::FiniteMetricSpace;

/// Isometry invariant used to score motifs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseInvariant {
    Separation,
    Diameter,
}

impl BaseInvariant {
    pub fn evaluate(self, x: &FiniteMetricSpace) -> f64 {
        match self {
            BaseInvariant::Separation => x.separation().unwrap_or(f64::INFINITY),
            BaseInvariant::Diameter => x.diameter().unwrap_or(0.0),
        }
    }
}

/// Which invariant to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantSpec {
    /// Least distance between distinct points (`+inf` on one point).
    Separation,
    /// Least diameter of a `k`-point subset; `+inf` when `|X| < k`.
    KMinus { k: usize },
    /// Largest `eps` with an injective contraction `X -> Δ_k(eps)`; zero
    /// when `|X| > k`.
    KPlus { k: usize },
    /// Infimum of `base(ω)` over motifs mapping injectively into `X`.
    OmegaMinus {
        motifs: Vec<FiniteMetricSpace>,
        base: BaseInvariant,
    },
    /// Supremum of `base(ω)` over motifs that `X` maps injectively into.
    OmegaPlus {
        motifs: Vec<FiniteMetricSpace>,
        base: BaseInvariant,
    },
    /// A non-increasing function of the number of points: `values[n-1]`
    /// for `n <= values.len()`, `tail` beyond.
    Cardinality {
        #[serde(with = "crate::io::length_vec")]
        values: Vec<f64>,
        #[serde(with = "crate::io::length")]
        tail: f64,
    },
}

impl InvariantSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            InvariantSpec::KMinus { k } | InvariantSpec::KPlus { k } if *k < 2 => {
                Err(invalid(format!("k must be at least 2, got {k}")))
            }
            InvariantSpec::Cardinality { values, tail } => {
                let all: Vec<f64> = values.iter().copied().chain([*tail]).collect();
                if all.iter().any(|v| v.is_nan() || *v < 0.0) {
                    return Err(invalid("cardinality values must lie in [0, inf]"));
                }
                if all.windows(2).any(|w| w[1] > w[0]) {
                    return Err(invalid("cardinality function must be non-increasing"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Evaluates `spec` on `x` with default search limits.
pub fn evaluate_invariant(spec: &InvariantSpec, x: &FiniteMetricSpace) -> Result<f64> {
    evaluate_invariant_with(spec, x, &SearchLimits::default())
}

pub fn evaluate_invariant_with(
    spec: &InvariantSpec,
    x: &FiniteMetricSpace,
    limits: &SearchLimits,
) -> Result<f64> {
    spec.validate()?;
    let n = x.len();
    Ok(match spec {
        InvariantSpec::Separation => x.separation().unwrap_or(f64::INFINITY),
        InvariantSpec::KMinus { k } => min_subset_diameter(x, *k),
        InvariantSpec::KPlus { k } => {
            if n > *k {
                0.0
            } else {
                x.separation().unwrap_or(f64::INFINITY)
            }
        }
        InvariantSpec::OmegaMinus { motifs, base } => {
            let mut best = f64::INFINITY;
            for w in motifs {
                limits.check(w.len())?;
                if find_assignment(w, x, CategoryTag::Inj, &[], Ratio::ONE).is_some() {
                    best = best.min(base.evaluate(w));
                }
            }
            best
        }
        InvariantSpec::OmegaPlus { motifs, base } => {
            let mut best = 0.0f64;
            for w in motifs {
                limits.check(w.len())?;
                if find_assignment(x, w, CategoryTag::Inj, &[], Ratio::ONE).is_some() {
                    best = best.max(base.evaluate(w));
                }
            }
            best
        }
        InvariantSpec::Cardinality { values, tail } => {
            if n >= 1 && n <= values.len() {
                values[n - 1]
            } else {
                *tail
            }
        }
    })
}

/// Least diameter over `k`-point subsets, by pruned enumeration.
pub fn min_subset_diameter(x: &FiniteMetricSpace, k: usize) -> f64 {
    fn extend(x: &FiniteMetricSpace, k: usize, start: usize, chosen: &mut Vec<usize>, diam: f64, best: &mut f64) {
        if chosen.len() == k {
            *best = best.min(diam);
            return;
        }
        let need = k - chosen.len();
        for next in start..x.len() {
            if x.len() - next < need {
                break;
            }
            let d = chosen.iter().map(|&c| x.d(c, next)).fold(diam, f64::max);
            if d >= *best {
                continue;
            }
            chosen.push(next);
            extend(x, k, next + 1, chosen, d, best);
            chosen.pop();
        }
    }
    if x.len() < k {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    extend(x, k, 0, &mut Vec::with_capacity(k), 0.0, &mut best);
    best
}

/// One morphism where `I(source) < I(target)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantViolation {
    pub index: usize,
    #[serde(with = "crate::io::length")]
    pub source_value: f64,
    #[serde(with = "crate::io::length")]
    pub target_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub trials: usize,
    pub violations: Vec<InvariantViolation>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `I(source) >= I(target)` over a corpus of injective morphisms.
pub fn check_functoriality_of_invariant(
    spec: &InvariantSpec,
    corpus: &[MetricMap],
) -> Result<InvariantReport> {
    let mut violations = Vec::new();
    for (index, f) in corpus.iter().enumerate() {
        if let Some(v) = f.check(CategoryTag::Inj) {
            return Err(Error::MalformedMap(format!(
                "corpus entry {index} is not injective and contracting: {:?} at {:?}",
                v.reason, v.pair
            )));
        }
        let source_value = evaluate_invariant(spec, f.source())?;
        let target_value = evaluate_invariant(spec, f.target())?;
        if source_value < target_value {
            violations.push(InvariantViolation {
                index,
                source_value,
                target_value,
            });
        }
    }
    Ok(InvariantReport {
        trials: corpus.len(),
        violations,
    })
}
