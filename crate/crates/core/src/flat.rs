//! Flat clustering schemes: each maps a finite metric space to a partition.

use serde::{Deserialize, Serialize};

use crate::category::{find_assignment, minimal_scale_indexed, CategoryTag, Ratio, SearchLimits};
use crate::error::{invalid, Result};
use crate::invariants::{evaluate_invariant_with, InvariantSpec};
use crate::metric::{delta_space, space_from_ultrametric, subdominant_flat, FiniteMetricSpace, MetricOptions};
use crate::partition::Partition;
use crate::union_find::UnionFind;

/// A finite collection of motif spaces parameterizing a representable
/// scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifSet {
    pub motifs: Vec<FiniteMetricSpace>,
    pub tag: CategoryTag,
    /// When set, the set stands for all positive rescalings of its motifs.
    #[serde(default)]
    pub scalable: bool,
}

impl MotifSet {
    pub fn new(motifs: Vec<FiniteMetricSpace>, tag: CategoryTag, scalable: bool) -> Result<Self> {
        let set = Self {
            motifs,
            tag,
            scalable,
        };
        set.validate()?;
        Ok(set)
    }

    /// `{Δ_m(delta) : m in sizes}`.
    pub fn deltas(sizes: &[usize], delta: f64, tag: CategoryTag, scalable: bool) -> Result<Self> {
        let motifs = sizes
            .iter()
            .map(|&m| delta_space(m, delta))
            .collect::<Result<Vec<_>>>()?;
        Self::new(motifs, tag, scalable)
    }

    pub fn validate(&self) -> Result<()> {
        if self.motifs.is_empty() {
            return Err(invalid("motif set must not be empty"));
        }
        if self.tag == CategoryTag::Iso {
            return Err(invalid("motif sets use the inj or gen tag"));
        }
        for w in &self.motifs {
            let n = w.len();
            if (0..n).any(|i| (0..n).any(|j| i != j && w.d(i, j) == 0.0)) {
                return Err(invalid("motif has a zero distance between distinct points"));
            }
        }
        Ok(())
    }

    pub fn with_scalable(&self, scalable: bool) -> Self {
        Self {
            scalable,
            ..self.clone()
        }
    }
}

/// Equilateral triangle of side `delta` plus its center, at circumradius
/// `delta / sqrt(3)` from each vertex.
pub fn triangle_with_center(delta: f64) -> Result<FiniteMetricSpace> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(invalid(format!("delta must be positive, got {delta}")));
    }
    let r = delta / 3f64.sqrt();
    let table = vec![
        vec![0.0, delta, delta, r],
        vec![delta, 0.0, delta, r],
        vec![delta, delta, 0.0, r],
        vec![r, r, r, 0.0],
    ];
    FiniteMetricSpace::new(
        vec!["v1".into(), "v2".into(), "v3".into(), "c".into()],
        table,
        MetricOptions::default(),
    )
}

/// A non-increasing map on `[0, +inf]`, used to turn an invariant into a
/// chaining threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Eta {
    /// `z -> 1/z`, with `1/0 = inf` and `1/inf = 0`.
    Reciprocal,
    /// Right-continuous steps: the value of the last step with `from <= z`.
    Steps { steps: Vec<EtaStep> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaStep {
    #[serde(with = "crate::io::length")]
    pub from: f64,
    #[serde(with = "crate::io::length")]
    pub value: f64,
}

impl Eta {
    pub fn validate(&self) -> Result<()> {
        if let Eta::Steps { steps } = self {
            if steps.first().map(|s| s.from) != Some(0.0) {
                return Err(invalid("eta steps must start at 0"));
            }
            if steps.windows(2).any(|w| w[1].from <= w[0].from) {
                return Err(invalid("eta breakpoints must increase"));
            }
            if steps.windows(2).any(|w| w[1].value > w[0].value) {
                return Err(invalid("eta must be non-increasing"));
            }
            if steps.iter().any(|s| s.value.is_nan() || s.value < 0.0) {
                return Err(invalid("eta values must lie in [0, inf]"));
            }
        }
        Ok(())
    }

    pub fn apply(&self, z: f64) -> f64 {
        match self {
            Eta::Reciprocal => {
                if z == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / z
                }
            }
            Eta::Steps { steps } => steps
                .iter()
                .rev()
                .find(|s| s.from <= z)
                .map_or(f64::INFINITY, |s| s.value),
        }
    }
}

/// A flat clustering scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlatScheme {
    /// Chaining with gaps `<= delta`.
    Rips { delta: f64 },
    /// Chaining with gaps `< delta`.
    RipsStrict { delta: f64 },
    /// Pairs covered by a motif image are joined; blocks are the
    /// connected components of the resulting pair graph.
    Representable(MotifSet),
    /// Pairs lying in some `m`-point subset of diameter `<= delta` are
    /// joined.
    Clique { m: usize, delta: f64 },
    /// Chaining at the data-dependent scale `eta(I(X))`.
    #[serde(alias = "nonexcisive")]
    NonExcisive { invariant: InvariantSpec, eta: Eta },
    /// Every space in one block.
    OneBlock,
    /// Every point on its own.
    Singletons,
}

/// Size bounds for the clique scheme without `force`.
pub const CLIQUE_MAX_POINTS: usize = 24;
pub const CLIQUE_MAX_M: usize = 5;

impl FlatScheme {
    pub fn validate(&self) -> Result<()> {
        let positive = |delta: f64| {
            if delta > 0.0 && delta.is_finite() {
                Ok(())
            } else {
                Err(invalid(format!("delta must be positive, got {delta}")))
            }
        };
        match self {
            FlatScheme::Rips { delta } | FlatScheme::RipsStrict { delta } => positive(*delta),
            FlatScheme::Clique { m, delta } => {
                if *m < 2 {
                    return Err(invalid(format!("clique size must be at least 2, got {m}")));
                }
                positive(*delta)
            }
            FlatScheme::Representable(set) => set.validate(),
            FlatScheme::NonExcisive { invariant, eta } => {
                invariant.validate()?;
                eta.validate()
            }
            FlatScheme::OneBlock | FlatScheme::Singletons => Ok(()),
        }
    }
}

/// Runs `scheme` on `x` with default search limits.
pub fn cluster_flat(scheme: &FlatScheme, x: &FiniteMetricSpace) -> Result<Partition> {
    cluster_flat_with(scheme, x, &SearchLimits::default())
}

pub fn cluster_flat_with(
    scheme: &FlatScheme,
    x: &FiniteMetricSpace,
    limits: &SearchLimits,
) -> Result<Partition> {
    scheme.validate()?;
    match scheme {
        FlatScheme::Rips { delta } => x.components_at_scale(*delta),
        FlatScheme::RipsStrict { delta } => x.components_below_scale(*delta),
        FlatScheme::Representable(set) => representable(set, x, limits),
        FlatScheme::Clique { m, delta } => clique(*m, *delta, x, limits),
        FlatScheme::NonExcisive { invariant, eta } => {
            let value = evaluate_invariant_with(invariant, x, limits)?;
            x.components_at_scale(eta.apply(value))
        }
        FlatScheme::OneBlock => Ok(Partition::one_block(x.labels())),
        FlatScheme::Singletons => Ok(Partition::singletons(x.labels())),
    }
}

fn components_of_pairs(
    x: &FiniteMetricSpace,
    mut joined: impl FnMut(usize, usize) -> Result<bool>,
) -> Result<Partition> {
    let n = x.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if uf.find(i) != uf.find(j) && joined(i, j)? {
                uf.union(i, j);
            }
        }
    }
    Ok(Partition::from_index_groups(x.labels(), &uf.groups()))
}

fn representable(set: &MotifSet, x: &FiniteMetricSpace, limits: &SearchLimits) -> Result<Partition> {
    for w in &set.motifs {
        limits.check(w.len())?;
    }
    components_of_pairs(x, |i, j| {
        for w in &set.motifs {
            let covered = if set.scalable {
                minimal_scale_indexed(w, x, set.tag, &[i, j])? <= 1.0
            } else {
                find_assignment(w, x, set.tag, &[i, j], Ratio::ONE).is_some()
            };
            if covered {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

fn clique(m: usize, delta: f64, x: &FiniteMetricSpace, limits: &SearchLimits) -> Result<Partition> {
    if !limits.force && (x.len() > CLIQUE_MAX_POINTS || m > CLIQUE_MAX_M) {
        return Err(invalid(format!(
            "clique scheme limited to {CLIQUE_MAX_POINTS} points and m <= {CLIQUE_MAX_M} without force"
        )));
    }
    components_of_pairs(x, |i, j| Ok(pair_in_small_clique(x, i, j, m, delta)))
}

/// Whether `{i, j}` extends to an `m`-point subset of diameter `<= delta`.
pub(crate) fn pair_in_small_clique(x: &FiniteMetricSpace, i: usize, j: usize, m: usize, delta: f64) -> bool {
    fn grow(x: &FiniteMetricSpace, pool: &[usize], chosen: &mut Vec<usize>, need: usize, delta: f64) -> bool {
        if need == 0 {
            return true;
        }
        for (k, &c) in pool.iter().enumerate() {
            if pool.len() - k < need {
                return false;
            }
            if chosen.iter().all(|&o| x.d(o, c) <= delta) {
                chosen.push(c);
                if grow(x, &pool[k + 1..], chosen, need - 1, delta) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if x.d(i, j) > delta {
        return false;
    }
    let pool: Vec<usize> = (0..x.len())
        .filter(|&k| k != i && k != j && x.d(k, i) <= delta && x.d(k, j) <= delta)
        .collect();
    grow(x, &pool, &mut Vec::new(), m - 2, delta)
}

/// Replaces the metric by the sub-dominant ultrametric of the least motif
/// scale covering each pair.
pub fn motif_metric_transform(x: &FiniteMetricSpace, set: &MotifSet) -> Result<FiniteMetricSpace> {
    motif_metric_transform_with(x, set, &SearchLimits::default())
}

pub fn motif_metric_transform_with(
    x: &FiniteMetricSpace,
    set: &MotifSet,
    limits: &SearchLimits,
) -> Result<FiniteMetricSpace> {
    set.validate()?;
    if !set.scalable {
        return Err(invalid("the motif transform needs a scalable motif set"));
    }
    for w in &set.motifs {
        limits.check(w.len())?;
    }
    let n = x.len();
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let mut best = f64::INFINITY;
            for w in &set.motifs {
                best = best.min(minimal_scale_indexed(w, x, set.tag, &[i, j])?);
            }
            weights[i * n + j] = best;
            weights[j * n + i] = best;
        }
    }
    Ok(space_from_ultrametric(
        x.labels().to_vec(),
        subdominant_flat(n, &weights),
    ))
}

/// Compares the representable scheme of `set` (motifs at face value) with
/// chaining at scale 1 after the motif transform. Expected to hold always.
pub fn factorize_check(set: &MotifSet, x: &FiniteMetricSpace) -> Result<bool> {
    let direct = cluster_flat(&FlatScheme::Representable(set.with_scalable(false)), x)?;
    let transformed = motif_metric_transform(x, &set.with_scalable(true))?;
    Ok(direct == transformed.components_at_scale(1.0)?)
}

/// A block that the scheme splits when re-run on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcisionWitness {
    pub block: Vec<String>,
    pub split: Partition,
}

/// Re-clusters every output block under the restricted metric; returns the
/// first block that does not come back whole, if any.
pub fn is_excisive_on(scheme: &FlatScheme, x: &FiniteMetricSpace) -> Result<Option<ExcisionWitness>> {
    let p = cluster_flat(scheme, x)?;
    for block in p.blocks() {
        let sub = x.restrict(block)?;
        let split = cluster_flat(scheme, &sub)?;
        if !split.is_single_block() {
            return Ok(Some(ExcisionWitness {
                block: block.clone(),
                split,
            }));
        }
    }
    Ok(None)
}

/// An ultrametric on the ground set of `p` whose Vietoris-Rips partition at
/// `delta` is `p`: `delta` inside blocks, `alpha * delta` across.
pub fn richness_witness(p: &Partition, delta: f64, alpha: f64) -> Result<FiniteMetricSpace> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(invalid(format!("alpha must exceed 1, got {alpha}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(invalid(format!("delta must be positive, got {delta}")));
    }
    let idx = p.block_index();
    let labels = p.ground().to_vec();
    let table = labels
        .iter()
        .map(|a| {
            labels
                .iter()
                .map(|b| {
                    if a == b {
                        0.0
                    } else if idx[a.as_str()] == idx[b.as_str()] {
                        delta
                    } else {
                        alpha * delta
                    }
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::new(labels, table, MetricOptions::default())
}

/// First corpus space whose partition changes under rescaling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleWitness {
    pub space_index: usize,
    pub lambda: f64,
    pub original: Partition,
    pub scaled: Partition,
}

/// The collapse pattern forced on scale-invariant schemes: singletons on
/// spaces with fewer than `min K` points, one block from `min K` on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapsePattern {
    /// Cardinalities `k` in `2..=k_max` for which `Δ_k(1)` is one block.
    pub k_set: Vec<usize>,
    pub k_max: usize,
    /// Corpus indices that break the pattern.
    pub violations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleReport {
    pub trials: usize,
    pub witness: Option<ScaleWitness>,
    /// Present only when no witness was found.
    pub collapse: Option<CollapsePattern>,
}

impl ScaleReport {
    pub fn scale_invariant(&self) -> bool {
        self.witness.is_none()
    }
}

/// Tests `C(λ·X) = C(X)` across `corpus` and `lambdas`; if that holds
/// everywhere, computes `K(C)` on `Δ_k(1)` for `k = 2..=k_max` (extended to
/// the largest corpus space) and checks the collapse pattern on the corpus.
pub fn scale_invariance_probe(
    scheme: &FlatScheme,
    corpus: &[FiniteMetricSpace],
    lambdas: &[f64],
    k_max: usize,
) -> Result<ScaleReport> {
    let mut trials = 0;
    for (space_index, x) in corpus.iter().enumerate() {
        let original = cluster_flat(scheme, x)?;
        for &lambda in lambdas {
            trials += 1;
            let scaled = cluster_flat(scheme, &x.scale(lambda)?)?;
            if scaled != original {
                return Ok(ScaleReport {
                    trials,
                    witness: Some(ScaleWitness {
                        space_index,
                        lambda,
                        original,
                        scaled,
                    }),
                    collapse: None,
                });
            }
        }
    }
    let k_max = corpus.iter().map(FiniteMetricSpace::len).fold(k_max, usize::max);
    let mut k_set = Vec::new();
    for k in 2..=k_max {
        if cluster_flat(scheme, &delta_space(k, 1.0)?)?.is_single_block() {
            k_set.push(k);
        }
    }
    let k_c = k_set.first().copied();
    let mut violations = Vec::new();
    for (i, x) in corpus.iter().enumerate() {
        if x.len() < 2 {
            continue;
        }
        let p = cluster_flat(scheme, x)?;
        let expect_one = k_c.is_some_and(|k| x.len() >= k);
        let ok = if expect_one {
            p.is_single_block()
        } else {
            p.is_discrete()
        };
        if !ok {
            violations.push(i);
        }
    }
    Ok(ScaleReport {
        trials,
        witness: None,
        collapse: Some(CollapsePattern {
            k_set,
            k_max,
            violations,
        }),
    })
}
