//! Seeded corpus generators and batch probes.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, so corpora and reports depend only on the
//! seed. Probes report "violations in N trials"; they never claim more.

use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::{CategoryTag, MetricMap};
use crate::error::{invalid, Error, Result};
use crate::flat::{
    cluster_flat, factorize_check, is_excisive_on, richness_witness, scale_invariance_probe,
    triangle_with_center, Eta, EtaStep, FlatScheme, MotifSet,
};
use crate::hierarchical::{
    agglomerative, dendrogram_to_ultrametric, is_persistence_preserving, rips_delta_m,
    single_linkage_functor, trim_functor, Level, Linkage, PersistentSet,
};
use crate::invariants::{check_functoriality_of_invariant, InvariantSpec};
use crate::metric::{
    delta_space, space_from_ultrametric, subdominant_flat, validate_metric, FiniteMetricSpace,
    MetricOptions,
};
use crate::partition::{Partition, PointMap};

/// Bound on rejection-sampling attempts per generated item.
pub const MAX_ATTEMPTS: usize = 100;

/// Random metric space models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CorpusModel {
    /// `n` uniform points in the unit square, Euclidean distances.
    EuclideanPlane { n: usize },
    /// The ultrametric of a random dendrogram on `n` points.
    RandomUltrametric { n: usize },
    /// Shortest-path distances of a connected random graph on `n` nodes:
    /// a random spanning tree plus each other edge with probability
    /// `density`; weights are multiples of 0.5 in `[0.5, 5]`.
    GraphMetric { n: usize, density: f64 },
}

impl CorpusModel {
    fn size(&self) -> usize {
        match *self {
            CorpusModel::EuclideanPlane { n }
            | CorpusModel::RandomUltrametric { n }
            | CorpusModel::GraphMetric { n, .. } => n,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.size() < 1 {
            return Err(invalid("corpus spaces need at least one point"));
        }
        if let CorpusModel::GraphMetric { density, .. } = *self {
            if !(0.0..=1.0).contains(&density) {
                return Err(invalid(format!("edge density must lie in [0, 1], got {density}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    #[serde(flatten)]
    pub model: CorpusModel,
    pub count: usize,
    pub seed: u64,
}

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn square_table(n: usize, flat: &[f64]) -> Vec<Vec<f64>> {
    flat.chunks(n.max(1)).take(n).map(<[f64]>::to_vec).collect()
}

fn sample_space(model: &CorpusModel, rng: &mut ChaCha8Rng) -> Result<FiniteMetricSpace> {
    let n = model.size();
    for _ in 0..MAX_ATTEMPTS {
        let built = match *model {
            CorpusModel::EuclideanPlane { .. } => {
                let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
                let table = pts
                    .iter()
                    .map(|a| pts.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect())
                    .collect();
                FiniteMetricSpace::new(point_labels(n), table, MetricOptions::default())
            }
            CorpusModel::RandomUltrametric { .. } => {
                random_dendrogram(&point_labels(n), rng).and_then(|t| dendrogram_to_ultrametric(&t))
            }
            CorpusModel::GraphMetric { density, .. } => {
                let mut d = vec![f64::INFINITY; n * n];
                for i in 0..n {
                    d[i * n + i] = 0.0;
                }
                let weight = |rng: &mut ChaCha8Rng| 0.5 * f64::from(rng.gen_range(1..=10u8));
                for i in 1..n {
                    let j = rng.gen_range(0..i);
                    let w = weight(rng);
                    d[i * n + j] = w;
                    d[j * n + i] = w;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if d[i * n + j].is_infinite() && rng.gen_bool(density) {
                            let w = weight(rng);
                            d[i * n + j] = w;
                            d[j * n + i] = w;
                        }
                    }
                }
                for k in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            let via = d[i * n + k] + d[k * n + j];
                            if via < d[i * n + j] {
                                d[i * n + j] = via;
                            }
                        }
                    }
                }
                FiniteMetricSpace::new(point_labels(n), square_table(n, &d), MetricOptions::default())
            }
        };
        if let Ok(x) = built {
            return Ok(x);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<FiniteMetricSpace>> {
    spec.model.validate()?;
    if spec.count < 1 {
        return Err(invalid("corpus count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count).map(|_| sample_space(&spec.model, &mut rng)).collect()
}

/// A corpus cycling through the three models, with sizes drawn uniformly
/// from `sizes` and graph density 0.3.
pub fn mixed_corpus(count: usize, sizes: RangeInclusive<usize>, seed: u64) -> Result<Vec<FiniteMetricSpace>> {
    if sizes.is_empty() || *sizes.start() < 1 {
        return Err(invalid("sizes must be a non-empty range of positive integers"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(sizes.clone());
            let model = match i % 3 {
                0 => CorpusModel::EuclideanPlane { n },
                1 => CorpusModel::RandomUltrametric { n },
                _ => CorpusModel::GraphMetric { n, density: 0.3 },
            };
            sample_space(&model, &mut rng)
        })
        .collect()
}

/// A random dendrogram on `labels`. Each step merges two or three blocks,
/// occasionally two groups at once, at heights that are multiples of 0.25.
pub fn random_dendrogram(labels: &[String], rng: &mut ChaCha8Rng) -> Result<PersistentSet> {
    let ground = labels.to_vec();
    let mut blocks: Vec<Vec<String>> = labels.iter().map(|l| vec![l.clone()]).collect();
    let mut levels = vec![Level {
        from: 0.0,
        partition: Partition::new(ground.clone(), blocks.clone())?,
    }];
    let mut height = 0.0;
    while blocks.len() > 1 {
        height += 0.25 * f64::from(rng.gen_range(1..=4u8));
        let merges = if blocks.len() >= 4 && rng.gen_bool(0.25) { 2 } else { 1 };
        blocks.shuffle(rng);
        let mut merged = Vec::new();
        for _ in 0..merges {
            let k = rng.gen_range(2..=blocks.len().min(3));
            merged.push(blocks.drain(..k).flatten().collect::<Vec<_>>());
            if blocks.len() < 2 {
                break;
            }
        }
        blocks.extend(merged);
        levels.push(Level {
            from: height,
            partition: Partition::new(ground.clone(), blocks.clone())?,
        });
    }
    PersistentSet::new(ground, levels)
}

/// `count` random dendrograms with sizes uniform in `1..=max_points`.
pub fn generate_dendrograms(count: usize, max_points: usize, seed: u64) -> Result<Vec<PersistentSet>> {
    if max_points < 1 {
        return Err(invalid("dendrograms need at least one point"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_points);
            random_dendrogram(&point_labels(n), &mut rng)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismGenerator {
    /// Chaining-class projections composed with contractions `λ <= 1`.
    QuotientCompose,
    /// Injective maps into a shrunk copy of the source with extra points.
    ShrinkEmbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorphismCorpusSpec {
    pub tag: CategoryTag,
    pub generator: MorphismGenerator,
    pub count: usize,
    pub seed: u64,
}

fn quotient_step(x: &FiniteMetricSpace, rng: &mut ChaCha8Rng) -> Result<MetricMap> {
    let mut scales = vec![0.0];
    scales.extend(x.distance_values());
    let r = *scales.choose(rng).expect("non-empty");
    let lambda = if rng.gen_bool(0.5) { 1.0 } else { rng.gen_range(0.25..1.0) };
    projection_then_scale(x, r, lambda)
}

/// `λ·π_r`. Below the separation every class is a singleton and the
/// projection is taken to be the identity on `X` itself.
pub fn projection_then_scale(x: &FiniteMetricSpace, r: f64, lambda: f64) -> Result<MetricMap> {
    let q = x.quotient_at_scale(r)?;
    if q.space.len() == x.len() {
        let id: PointMap = x.labels().iter().map(|l| (l.clone(), l.clone())).collect();
        return MetricMap::new(x.clone(), x.scale(lambda)?, &id);
    }
    MetricMap::new(x.clone(), q.space.scale(lambda)?, &q.projection)
}

fn shrink_embed(x: &FiniteMetricSpace, rng: &mut ChaCha8Rng) -> Result<MetricMap> {
    let n = x.len();
    let labels: Vec<String> = x.labels().iter().map(|l| format!("y:{l}")).collect();
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = x.d(i, j) * rng.gen_range(0.5..=1.0);
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    }
    let mut y = FiniteMetricSpace::new(labels.clone(), square_table(n, &w), MetricOptions::default())
        .unwrap_or_else(|_| space_from_ultrametric(labels, subdominant_flat(n, &w)));
    for extra in 0..rng.gen_range(0..=2) {
        let m = y.len();
        let anchor = rng.gen_range(0..m);
        let h: f64 = rng.gen_range(0.1..1.0);
        let ultra = y.is_ultrametric();
        let row: Vec<f64> = (0..m)
            .map(|j| {
                let d = y.d(anchor, j);
                if ultra {
                    h.max(d)
                } else {
                    h + d
                }
            })
            .collect();
        let mut table = y.table();
        for (t, r) in table.iter_mut().zip(&row) {
            t.push(*r);
        }
        table.push(row.into_iter().chain([0.0]).collect());
        let mut labels = y.labels().to_vec();
        labels.push(format!("z{extra}"));
        y = FiniteMetricSpace::new(labels, table, MetricOptions::default())?;
    }
    let f: PointMap = x.labels().iter().map(|l| (l.clone(), format!("y:{l}"))).collect();
    MetricMap::new(x.clone(), y, &f)
}

/// Samples morphisms out of spaces drawn from `pool`. Every emitted map is
/// re-checked against its tag.
pub fn generate_morphisms(pool: &[FiniteMetricSpace], spec: &MorphismCorpusSpec) -> Result<Vec<MetricMap>> {
    if pool.is_empty() {
        return Err(invalid("morphism pool must not be empty"));
    }
    match (spec.generator, spec.tag) {
        (MorphismGenerator::QuotientCompose, CategoryTag::Gen) => {}
        (MorphismGenerator::ShrinkEmbed, CategoryTag::Inj | CategoryTag::Gen) => {}
        (g, t) => return Err(invalid(format!("generator {g:?} does not produce {t:?} morphisms"))),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let mut made = None;
        for _ in 0..MAX_ATTEMPTS {
            let x = pool.choose(&mut rng).expect("non-empty pool");
            let f = match spec.generator {
                MorphismGenerator::QuotientCompose => {
                    let f = quotient_step(x, &mut rng)?;
                    if rng.gen_bool(0.3) {
                        let g = quotient_step(f.target(), &mut rng)?;
                        f.then(&g)?
                    } else {
                        f
                    }
                }
                MorphismGenerator::ShrinkEmbed => match shrink_embed(x, &mut rng) {
                    Ok(f) => f,
                    Err(_) => continue,
                },
            };
            if f.is_morphism(spec.tag) {
                made = Some(f);
                break;
            }
        }
        out.push(made.ok_or(Error::GenerationFailed(MAX_ATTEMPTS))?);
    }
    Ok(out)
}

/// The pinned five-point space on which the separation-driven scheme
/// is not excisive.
pub fn nonexcisive_space() -> FiniteMetricSpace {
    let t = vec![
        vec![0.0, 2.0, 3.0, 5.0, 5.0],
        vec![2.0, 0.0, 1.0, 5.0, 5.0],
        vec![3.0, 1.0, 0.0, 5.0, 5.0],
        vec![5.0, 5.0, 5.0, 0.0, 0.5],
        vec![5.0, 5.0, 5.0, 0.5, 0.0],
    ];
    validate_metric(["A", "B", "C", "D", "E"], t, false).expect("valid table")
}

/// `NONEXCISIVE(separation, 1/z)`.
pub fn nonexcisive_scheme() -> FlatScheme {
    FlatScheme::NonExcisive {
        invariant: InvariantSpec::Separation,
        eta: Eta::Reciprocal,
    }
}

/// Two triangles and the elementwise contraction between them on which
/// complete and average linkage fail to preserve persistence.
pub fn linkage_counterexample() -> (FiniteMetricSpace, FiniteMetricSpace, PointMap) {
    let tri = |labels: [&str; 3], ab: f64, ac: f64, bc: f64| {
        validate_metric(labels, vec![vec![0.0, ab, ac], vec![ab, 0.0, bc], vec![ac, bc, 0.0]], false)
            .expect("valid triangle")
    };
    let x = tri(["A", "B", "C"], 4.0, 3.0, 5.0);
    let y = tri(["A'", "B'", "C'"], 2.0, 3.0, 4.0);
    let f = [("A", "A'"), ("B", "B'"), ("C", "C'")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    (x, y, f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeId {
    Functoriality,
    Excisiveness,
    Factorization,
    ScaleCollapse,
    RichnessRoundtrip,
    UniquenessConditions,
    Counterexamples,
}

impl ProbeId {
    pub const ALL: [ProbeId; 7] = [
        ProbeId::Functoriality,
        ProbeId::Excisiveness,
        ProbeId::Factorization,
        ProbeId::ScaleCollapse,
        ProbeId::RichnessRoundtrip,
        ProbeId::UniquenessConditions,
        ProbeId::Counterexamples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProbeId::Functoriality => "FUNCTORIALITY",
            ProbeId::Excisiveness => "EXCISIVENESS",
            ProbeId::Factorization => "FACTORIZATION",
            ProbeId::ScaleCollapse => "SCALE_COLLAPSE",
            ProbeId::RichnessRoundtrip => "RICHNESS_ROUNDTRIP",
            ProbeId::UniquenessConditions => "UNIQUENESS_CONDITIONS",
            ProbeId::Counterexamples => "COUNTEREXAMPLES",
        }
    }
}

impl FromStr for ProbeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ProbeId::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| invalid(format!("unknown probe `{s}`")))
    }
}

/// Corpus sizes for a probe run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub seed: u64,
    /// Number of corpus spaces (and dendrograms).
    pub spaces: usize,
    /// Largest corpus space.
    pub max_points: usize,
    /// Number of generated morphisms per category.
    pub morphisms: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            spaces: 60,
            max_points: 10,
            morphisms: 60,
        }
    }
}

impl ProbeConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// One failed or noteworthy check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRecord {
    pub check: String,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub probe: ProbeId,
    pub seed: u64,
    pub trials: usize,
    pub violations: Vec<ProbeRecord>,
    /// Expected counterexamples that were reproduced.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<ProbeRecord>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Tally {
    report: ProbeReport,
}

impl Tally {
    fn new(probe: ProbeId, seed: u64) -> Self {
        Self {
            report: ProbeReport {
                probe,
                seed,
                trials: 0,
                violations: Vec::new(),
                findings: Vec::new(),
            },
        }
    }

    fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> Value) {
        self.report.trials += 1;
        if !ok {
            self.report.violations.push(ProbeRecord {
                check: name.to_string(),
                witness: witness(),
            });
        }
    }

    fn found(&mut self, name: &str, witness: Value) {
        self.report.findings.push(ProbeRecord {
            check: name.to_string(),
            witness,
        });
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn refines_pullback(px: &Partition, f: &MetricMap, py: &Partition) -> Result<bool> {
    px.refines(&py.pullback(&f.point_map())?)
}

fn test_scales(f: &MetricMap) -> Vec<f64> {
    let mut v = f.source().distance_values();
    v.extend(f.target().distance_values());
    v.push(1.0);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Runs one probe over corpora derived from `config`.
pub fn run_probe(probe: ProbeId, config: &ProbeConfig) -> Result<ProbeReport> {
    let mut t = Tally::new(probe, config.seed);
    match probe {
        ProbeId::Functoriality => functoriality(&mut t, config)?,
        ProbeId::Excisiveness => excisiveness(&mut t, config)?,
        ProbeId::Factorization => factorization(&mut t, config)?,
        ProbeId::ScaleCollapse => scale_collapse(&mut t, config)?,
        ProbeId::RichnessRoundtrip => richness(&mut t, config)?,
        ProbeId::UniquenessConditions => uniqueness(&mut t, config)?,
        ProbeId::Counterexamples => counterexamples(&mut t)?,
    }
    Ok(t.report)
}

fn functoriality(t: &mut Tally, cfg: &ProbeConfig) -> Result<()> {
    let pool = mixed_corpus(cfg.spaces, 1..=cfg.max_points, cfg.seed)?;
    let gen = generate_morphisms(
        &pool,
        &MorphismCorpusSpec {
            tag: CategoryTag::Gen,
            generator: MorphismGenerator::QuotientCompose,
            count: cfg.morphisms,
            seed: cfg.seed.wrapping_add(1),
        },
    )?;
    for (i, f) in gen.iter().enumerate() {
        for delta in test_scales(f) {
            let s = FlatScheme::Rips { delta };
            let px = cluster_flat(&s, f.source())?;
            let py = cluster_flat(&s, f.target())?;
            let ok = refines_pullback(&px, f, &py)?;
            t.check("rips_gen", ok, || json!({ "morphism": i, "delta": delta }));
        }
        let w = is_persistence_preserving(
            &f.point_map(),
            &single_linkage_functor(f.source()),
            &single_linkage_functor(f.target()),
        )?;
        t.check("single_linkage_gen", w.is_none(), || json!({ "morphism": i, "witness": to_value(&w) }));
    }

    let inj = generate_morphisms(
        &pool,
        &MorphismCorpusSpec {
            tag: CategoryTag::Inj,
            generator: MorphismGenerator::ShrinkEmbed,
            count: cfg.morphisms,
            seed: cfg.seed.wrapping_add(2),
        },
    )?;
    let ne = nonexcisive_scheme();
    for (i, f) in inj.iter().enumerate() {
        let (x, y) = (f.source(), f.target());
        let ok = refines_pullback(&cluster_flat(&ne, x)?, f, &cluster_flat(&ne, y)?)?;
        t.check("nonexcisive_inj", ok, || json!({ "morphism": i }));

        for m in [2, 3] {
            let (tx, ty) = (trim_functor(x, m)?, trim_functor(y, m)?);
            let w = is_persistence_preserving(&f.point_map(), &tx, &ty)?;
            t.check("trim_inj", w.is_none(), || json!({ "morphism": i, "m": m, "witness": to_value(&w) }));
            let ok = survivors_map_to_survivors(f, m)?;
            t.check("trim_survivors_inj", ok, || json!({ "morphism": i, "m": m }));
        }

        let w = is_persistence_preserving(&f.point_map(), &rips_delta_m(x, 3)?, &rips_delta_m(y, 3)?)?;
        t.check("rips_delta_3_inj", w.is_none(), || json!({ "morphism": i, "witness": to_value(&w) }));
    }
    for spec in [InvariantSpec::Separation, InvariantSpec::KMinus { k: 3 }] {
        let rep = check_functoriality_of_invariant(&spec, &inj)?;
        for v in &rep.violations {
            t.report.violations.push(ProbeRecord {
                check: "invariant_monotone_inj".into(),
                witness: json!({ "invariant": to_value(&spec), "violation": to_value(v) }),
            });
        }
        t.report.trials += rep.trials;
    }
    Ok(())
}

/// Points in chaining classes of size `>= m` land in classes of size
/// `>= m`, at every scale where either side changes.
fn survivors_map_to_survivors(f: &MetricMap, m: usize) -> Result<bool> {
    let (sx, sy) = (single_linkage_functor(f.source()), single_linkage_functor(f.target()));
    let mut scales: Vec<f64> = sx.levels().iter().chain(sy.levels()).map(|l| l.from).collect();
    scales.sort_by(f64::total_cmp);
    scales.dedup();
    for r in scales {
        let (px, py) = (sx.slice(r)?, sy.slice(r)?);
        let size_y: std::collections::BTreeMap<&str, usize> = py
            .blocks()
            .iter()
            .flat_map(|b| b.iter().map(move |l| (l.as_str(), b.len())))
            .collect();
        for block in px.blocks().iter().filter(|b| b.len() >= m) {
            for x in block {
                let y = f.image(x).expect("total map");
                if size_y[y] < m {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn excisiveness(t: &mut Tally, cfg: &ProbeConfig) -> Result<()> {
    let corpus = mixed_corpus(cfg.spaces, 1..=cfg.max_points, cfg.seed)?;
    let mut schemes = vec![
        FlatScheme::Rips { delta: 0.5 },
        FlatScheme::Rips { delta: 1.0 },
        FlatScheme::RipsStrict { delta: 1.0 },
    ];
    for (sizes, delta, tag) in [
        (&[2][..], 0.5, CategoryTag::Inj),
        (&[3], 1.0, CategoryTag::Inj),
        (&[3, 4], 1.5, CategoryTag::Inj),
        (&[3], 0.75, CategoryTag::Gen),
    ] {
        schemes.push(FlatScheme::Representable(MotifSet::deltas(sizes, delta, tag, false)?));
    }
    schemes.push(FlatScheme::Representable(MotifSet::new(
        vec![triangle_with_center(1.0)?],
        CategoryTag::Inj,
        false,
    )?));
    for (si, s) in schemes.iter().enumerate() {
        for (xi, x) in corpus.iter().enumerate() {
            let w = is_excisive_on(s, x)?;
            t.check("excisive", w.is_none(), || {
                json!({ "scheme": si, "space": xi, "witness": to_value(&w) })
            });
        }
    }
    let w = is_excisive_on(&nonexcisive_scheme(), &nonexcisive_space())?;
    match w {
        Some(w) => t.found("nonexcisive_golden", to_value(&w)),
        None => t.check("nonexcisive_golden", false, || json!("scheme was excisive on the golden space")),
    }
    Ok(())
}

fn factorization(t: &mut Tally, cfg: &ProbeConfig) -> Result<()> {
    let corpus = mixed_corpus(cfg.spaces, 1..=cfg.max_points.min(10), cfg.seed)?;
    let sets: Vec<MotifSet> = [&[2][..], &[3], &[4], &[3, 4]]
        .iter()
        .map(|sizes| MotifSet::deltas(sizes, 1.0, CategoryTag::Inj, true))
        .collect::<Result<_>>()?;
    for (xi, x) in corpus.iter().enumerate() {
        for (oi, set) in sets.iter().enumerate() {
            let ok = factorize_check(set, x)?;
            t.check("factorization", ok, || json!({ "space": xi, "motif_set": oi }));
        }
        let small = cluster_flat(&FlatScheme::Representable(sets[1].with_scalable(false)), x)?;
        let large = cluster_flat(&FlatScheme::Representable(sets[3].with_scalable(false)), x)?;
        t.check("motif_monotone", small.refines(&large)?, || json!({ "space": xi }));
    }
    for set in &sets {
        for w in &set.motifs {
            let p = cluster_flat(&FlatScheme::Representable(set.with_scalable(false)), w)?;
            t.check("motif_self_cluster", p.is_single_block(), || json!({ "motif_size": w.len() }));
        }
    }
    Ok(())
}

/// `Cardinality` plus a step η giving one block from three points on and
/// singletons below.
pub fn collapse_at_three_scheme() -> FlatScheme {
    FlatScheme::NonExcisive {
        invariant: InvariantSpec::Cardinality {
            values: vec![1.0, 1.0],
            tail: 0.0,
        },
        eta: Eta::Steps {
            steps: vec![
                EtaStep {
                    from: 0.0,
                    value: f64::INFINITY,
                },
                EtaStep { from: 1.0, value: 0.0 },
            ],
        },
    }
}

fn scale_collapse(t: &mut Tally, cfg: &ProbeConfig) -> Result<()> {
    let mut corpus = vec![delta_space(2, 1.0)?];
    corpus.extend(mixed_corpus(cfg.spaces, 1..=cfg.max_points, cfg.seed)?);
    let lambdas = [0.5, 2.0, 3.0];
    let k_max = 6;

    let rips = scale_invariance_probe(&FlatScheme::Rips { delta: 1.0 }, &corpus, &lambdas, k_max)?;
    t.report.trials += 1;
    match &rips.witness {
        Some(w) => t.found("rips_not_scale_invariant", to_value(w)),
        None => t.check("rips_not_scale_invariant", false, || json!("no witness")),
    }

    let n_max = corpus.iter().map(FiniteMetricSpace::len).max().unwrap_or(0).max(k_max);
    let expectations: [(&str, FlatScheme, Vec<usize>); 3] = [
        ("one_block", FlatScheme::OneBlock, (2..=n_max).collect()),
        ("singletons", FlatScheme::Singletons, Vec::new()),
        ("collapse_at_three", collapse_at_three_scheme(), (3..=n_max).collect()),
    ];
    for (name, scheme, expected_k) in expectations {
        let rep = scale_invariance_probe(&scheme, &corpus, &lambdas, k_max)?;
        t.check(name, rep.scale_invariant(), || to_value(&rep.witness));
        if let Some(pat) = &rep.collapse {
            t.check(name, pat.k_set == expected_k, || json!({ "k_set": pat.k_set }));
            t.check(name, pat.violations.is_empty(), || json!({ "spaces": pat.violations }));
        }
    }
    Ok(())
}

fn richness(t: &mut Tally, cfg: &ProbeConfig) -> Result<()> {
    let dendrograms = generate_dendrograms(cfg.spaces, 15, cfg.seed)?;
    for (i, theta) in dendrograms.iter().enumerate() {
        let u = dendrogram_to_ultrametric(theta)?;
        let back = single_linkage_functor(&u);
        t.check("roundtrip", &back == theta, || json!({ "dendrogram": i }));
        for level in theta.levels() {
            let x = richness_witness(&level.partition, 1.0, 2.0)?;
            let p = cluster_flat(&FlatScheme::Rips { delta: 1.0 }, &x)?;
            t.check("rips_surjective", p == level.partition, || json!({ "dendrogram": i, "from": level.from }));
        }
    }
    Ok(())
}

fn uniqueness(t: &mut Tally, cfg: &ProbeConfig) -> Result<()> {
    let corpus = mixed_corpus(cfg.spaces, 1..=cfg.max_points, cfg.seed)?;
    for (xi, x) in corpus.iter().enumerate() {
        let theta = single_linkage_functor(x);
        let mut labels = x.labels().to_vec();
        labels.sort();
        t.check("ground_preserved", theta.ground() == labels.as_slice(), || json!({ "space": xi }));
        if x.len() >= 2 {
            let sep = x.separation()?;
            let ok = theta.levels()[0].partition.is_discrete()
                && theta.breakpoints().first().is_some_and(|&b| b >= sep);
            t.check("discrete_below_separation", ok, || json!({ "space": xi, "separation": sep }));
        }
        for delta in x.distance_values() {
            let ok = theta.slice(delta)? == &cluster_flat(&FlatScheme::Rips { delta }, x)?;
            t.check("slice_is_rips", ok, || json!({ "space": xi, "delta": delta }));
        }
    }
    for delta in [0.25, 0.5, 1.0, 2.5, 7.0] {
        let theta = single_linkage_functor(&delta_space(2, delta)?);
        t.check("two_point_merge", theta.breakpoints() == [delta], || json!({ "delta": delta }));
    }
    for delta_c in [0.5, 1.0, 2.0] {
        for (delta, boundary) in [(delta_c / 2.0, false), (delta_c, true), (delta_c * 2.0, false)] {
            let d2 = delta_space(2, delta)?;
            let open = cluster_flat(&FlatScheme::Rips { delta: delta_c }, &d2)?;
            let strict = cluster_flat(&FlatScheme::RipsStrict { delta: delta_c }, &d2)?;
            let ok = if boundary {
                open.is_single_block() && strict.is_discrete()
            } else {
                open == strict && open.is_single_block() == (delta < delta_c)
            };
            t.check("rips_strict_boundary", ok, || json!({ "delta_c": delta_c, "delta": delta }));
        }
    }
    Ok(())
}

fn counterexamples(t: &mut Tally) -> Result<()> {
    let (x, y, f) = linkage_counterexample();
    for linkage in [Linkage::Complete, Linkage::Average] {
        let w = is_persistence_preserving(&f, &agglomerative(&x, linkage), &agglomerative(&y, linkage))?;
        let name = format!("{linkage:?}_linkage").to_lowercase();
        match w {
            Some(w) if w.from < 3.5 && 3.5 < w.to || (3.0..4.0).contains(&w.scale) => {
                t.report.trials += 1;
                t.found(&name, to_value(&w));
            }
            other => t.check(&name, false, || to_value(&other)),
        }
    }
    let w = is_persistence_preserving(&f, &single_linkage_functor(&x), &single_linkage_functor(&y))?;
    t.check("single_linkage", w.is_none(), || to_value(&w));

    let w = is_excisive_on(&nonexcisive_scheme(), &nonexcisive_space())?;
    match w {
        Some(w) if w.block == ["A", "B", "C"] => {
            t.report.trials += 1;
            t.found("nonexcisive", to_value(&w));
        }
        other => t.check("nonexcisive", false, || to_value(&other)),
    }
    Ok(())
}
