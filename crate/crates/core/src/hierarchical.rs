//! Persistent sets, dendrograms and hierarchical schemes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::SearchLimits;
use crate::error::{invalid, Error, Result};
use crate::flat::{motif_metric_transform_with, MotifSet};
use crate::metric::{space_from_ultrametric, FiniteMetricSpace};
use crate::partition::{Partition, PointMap};
use crate::union_find::UnionFind;
use crate::CategoryTag;

/// One step of a persistent set: `partition` holds on `[from, next from)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub from: f64,
    pub partition: Partition,
}

/// A right-continuous, coarsening family of partitions indexed by
/// `r >= 0`, stored as its steps.
///
/// The first level starts at 0, starts increase strictly and consecutive
/// partitions differ, so equality is structural. A persistent set that
/// ends in a single block is a dendrogram.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistentSet {
    ground: Vec<String>,
    levels: Vec<Level>,
}

#[derive(Deserialize)]
struct RawPersistentSet {
    ground: Vec<String>,
    levels: Vec<Level>,
}

impl<'de> Deserialize<'de> for PersistentSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPersistentSet::deserialize(d)?;
        PersistentSet::new(raw.ground, raw.levels).map_err(serde::de::Error::custom)
    }
}

fn push_level(levels: &mut Vec<Level>, from: f64, partition: Partition) {
    if levels.last().is_some_and(|l| l.from == from) {
        levels.pop();
    }
    if levels.last().is_some_and(|l| l.partition == partition) {
        return;
    }
    levels.push(Level { from, partition });
}

impl PersistentSet {
    /// Validates and canonicalizes. Missing levels before the first start
    /// are filled with singletons at 0; repeated partitions are coalesced.
    pub fn new(mut ground: Vec<String>, levels: Vec<Level>) -> Result<Self> {
        let singletons = Partition::new(ground.clone(), ground.iter().map(|g| vec![g.clone()]).collect())?;
        ground.sort();
        let mut out = Vec::with_capacity(levels.len() + 1);
        if levels.first().is_none_or(|l| l.from > 0.0) {
            out.push(Level {
                from: 0.0,
                partition: singletons,
            });
        }
        let mut prev: Option<f64> = None;
        for level in levels {
            if !(level.from >= 0.0 && level.from.is_finite()) {
                return Err(invalid(format!("level start must be finite and non-negative, got {}", level.from)));
            }
            if prev.is_some_and(|p| level.from <= p) {
                return Err(invalid("level starts must increase strictly"));
            }
            prev = Some(level.from);
            if level.partition.ground() != ground.as_slice() {
                return Err(Error::GroundMismatch);
            }
            if let Some(last) = out.last() {
                if !last.partition.refines(&level.partition)? {
                    return Err(invalid(format!("partition at {} does not coarsen the previous one", level.from)));
                }
            }
            push_level(&mut out, level.from, level.partition);
        }
        Ok(Self { ground, levels: out })
    }

    fn from_steps(ground: &[String], steps: impl IntoIterator<Item = (f64, Partition)>) -> Self {
        let mut levels = Vec::new();
        for (from, p) in steps {
            push_level(&mut levels, from, p);
        }
        let mut ground = ground.to_vec();
        ground.sort();
        Self { ground, levels }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Scales where the partition changes, excluding the initial 0.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.levels.iter().skip(1).map(|l| l.from).collect()
    }

    pub fn final_partition(&self) -> &Partition {
        &self.levels.last().expect("at least one level").partition
    }

    pub fn is_dendrogram(&self) -> bool {
        self.final_partition().is_single_block()
    }

    /// The partition in force at `r`.
    pub fn slice(&self, r: f64) -> Result<&Partition> {
        if !(r >= 0.0) {
            return Err(invalid(format!("scale must be non-negative, got {r}")));
        }
        let i = self.levels.partition_point(|l| l.from <= r);
        Ok(&self.levels[i - 1].partition)
    }

    /// Renames labels through an injective map on the ground set.
    pub fn relabel(&self, rename: &PointMap) -> Result<Self> {
        let ground = self
            .ground
            .iter()
            .map(|g| rename.get(g).cloned().ok_or_else(|| Error::UnknownLabel(g.clone())))
            .collect::<Result<Vec<_>>>()?;
        let levels = self
            .levels
            .iter()
            .map(|l| {
                Ok(Level {
                    from: l.from,
                    partition: l.partition.relabel(rename)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, levels)
    }

    /// Graphviz rendering of the merge tree. Leaves are points; each merge
    /// node carries its height.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("digraph dendrogram {\n  node [shape=box];\n");
        let mut current: BTreeMap<Vec<String>, String> = BTreeMap::new();
        for (i, g) in self.ground.iter().enumerate() {
            let id = format!("p{i}");
            let _ = writeln!(out, "  {id} [label={}];", quote(g));
            current.insert(vec![g.clone()], id);
        }
        let mut next = 0;
        for level in &self.levels {
            for block in level.partition.blocks() {
                if current.contains_key(block) {
                    continue;
                }
                let children: Vec<Vec<String>> = current
                    .keys()
                    .filter(|k| block.binary_search(&k[0]).is_ok())
                    .cloned()
                    .collect();
                let id = format!("m{next}");
                next += 1;
                let _ = writeln!(
                    out,
                    "  {id} [shape=ellipse, label={}, height_value={}];",
                    quote(&level.from.to_string()),
                    quote(&level.from.to_string())
                );
                for child in children {
                    let child_id = current.remove(&child).expect("child present");
                    let _ = writeln!(out, "  {id} -> {child_id};");
                }
                current.insert(block.clone(), id);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Inter-block dissimilarity used by [`agglomerative`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    Average,
}

impl FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Self::Single),
            "complete" => Ok(Self::Complete),
            "average" => Ok(Self::Average),
            other => Err(invalid(format!("unknown linkage `{other}`"))),
        }
    }
}

impl Linkage {
    fn value(self, x: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> f64 {
        let pairs = a.iter().flat_map(|&i| b.iter().map(move |&j| x.d(i, j)));
        match self {
            Linkage::Single => pairs.fold(f64::INFINITY, f64::min),
            Linkage::Complete => pairs.fold(0.0, f64::max),
            Linkage::Average => {
                // Sorted summation keeps the mean independent of labelling.
                let mut v: Vec<f64> = pairs.collect();
                v.sort_by(f64::total_cmp);
                v.iter().sum::<f64>() / v.len() as f64
            }
        }
    }
}

/// Hierarchical Vietoris-Rips: the slice at `r` is the chaining partition
/// at scale `r`. Breakpoints are the distinct values of the sub-dominant
/// ultrametric.
pub fn single_linkage_functor(x: &FiniteMetricSpace) -> PersistentSet {
    let n = x.len();
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            w[i * n + j] = x.d(i, j);
        }
    }
    let u = crate::metric::subdominant_flat(n, &w);
    let mut values: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| u[i * n + j])
        .filter(|v| v.is_finite())
        .collect();
    values.push(0.0);
    values.sort_by(f64::total_cmp);
    values.dedup();
    PersistentSet::from_steps(
        x.labels(),
        values
            .into_iter()
            .map(|v| (v, x.components_at_scale(v).expect("non-negative scale"))),
    )
}

/// Agglomerative clustering with simultaneous merges: at each step every
/// group of blocks chained by linkage `<= r_i` merges, where `r_i` is the
/// least current linkage value.
pub fn agglomerative(x: &FiniteMetricSpace, linkage: Linkage) -> PersistentSet {
    let labels = x.labels();
    let mut blocks: Vec<Vec<usize>> = (0..x.len()).map(|i| vec![i]).collect();
    let mut steps = vec![(0.0, Partition::singletons(labels))];
    while blocks.len() > 1 {
        let k = blocks.len();
        let mut table = vec![0.0; k * k];
        let mut r = f64::INFINITY;
        for a in 0..k {
            for b in a + 1..k {
                let v = linkage.value(x, &blocks[a], &blocks[b]);
                table[a * k + b] = v;
                r = r.min(v);
            }
        }
        if r.is_infinite() {
            break;
        }
        let mut uf = UnionFind::new(k);
        for a in 0..k {
            for b in a + 1..k {
                if table[a * k + b] <= r {
                    uf.union(a, b);
                }
            }
        }
        blocks = uf
            .groups()
            .into_iter()
            .map(|g| {
                let mut merged: Vec<usize> = g.into_iter().flat_map(|i| blocks[i].clone()).collect();
                merged.sort_unstable();
                merged
            })
            .collect();
        steps.push((r, Partition::from_index_groups(labels, &blocks)));
    }
    PersistentSet::from_steps(labels, steps)
}

fn trimmed(p: &Partition, m: usize) -> Result<Partition> {
    let mut blocks = Vec::new();
    for b in p.blocks() {
        if b.len() >= m {
            blocks.push(b.clone());
        } else {
            blocks.extend(b.iter().map(|x| vec![x.clone()]));
        }
    }
    Partition::new(p.ground().to_vec(), blocks)
}

/// Single linkage where chaining classes with fewer than `m` points are
/// shattered into singletons.
pub fn trim_functor(x: &FiniteMetricSpace, m: usize) -> Result<PersistentSet> {
    if m < 1 {
        return Err(invalid("trim size must be at least 1"));
    }
    let sl = single_linkage_functor(x);
    let steps = sl
        .levels
        .iter()
        .map(|l| Ok((l.from, trimmed(&l.partition, m)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PersistentSet::from_steps(x.labels(), steps))
}

/// Single linkage after the `{Δ_m(1)}` motif transform under injective
/// maps; its slice at `delta` is the clique scheme with parameters
/// `(m, delta)`.
pub fn rips_delta_m(x: &FiniteMetricSpace, m: usize) -> Result<PersistentSet> {
    rips_delta_m_with(x, m, &SearchLimits::default())
}

pub fn rips_delta_m_with(x: &FiniteMetricSpace, m: usize, limits: &SearchLimits) -> Result<PersistentSet> {
    if m < 2 {
        return Err(invalid(format!("motif size must be at least 2, got {m}")));
    }
    let set = MotifSet::deltas(&[m], 1.0, CategoryTag::Inj, true)?;
    let t = motif_metric_transform_with(x, &set, limits)?;
    Ok(single_linkage_functor(&t))
}

/// An interval on which `θ_X(r)` fails to refine `f^*(θ_Y(r))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistenceWitness {
    pub from: f64,
    #[serde(with = "crate::io::length")]
    pub to: f64,
    /// A representative scale inside `[from, to)`: the midpoint, or `from`
    /// on the unbounded last interval.
    pub scale: f64,
    pub source: Partition,
    pub pulled_back: Partition,
}

/// Checks that `θ_X(r)` refines `f^*(θ_Y(r))` for all `r`. Both sides are
/// step functions, so one test per interval of the merged breakpoints
/// suffices. Returns the first violating interval, or `None`.
pub fn is_persistence_preserving(
    f: &PointMap,
    theta_x: &PersistentSet,
    theta_y: &PersistentSet,
) -> Result<Option<PersistenceWitness>> {
    if !f.keys().eq(theta_x.ground.iter()) {
        return Err(Error::GroundMismatch);
    }
    let mut scales: Vec<f64> = theta_x
        .levels
        .iter()
        .chain(&theta_y.levels)
        .map(|l| l.from)
        .collect();
    scales.sort_by(f64::total_cmp);
    scales.dedup();
    for (i, &from) in scales.iter().enumerate() {
        let source = theta_x.slice(from)?;
        let pulled_back = theta_y.slice(from)?.pullback(f)?;
        if !source.refines(&pulled_back)? {
            let to = scales.get(i + 1).copied().unwrap_or(f64::INFINITY);
            let scale = if to.is_finite() { (from + to) / 2.0 } else { from };
            return Ok(Some(PersistenceWitness {
                from,
                to,
                scale,
                source: source.clone(),
                pulled_back,
            }));
        }
    }
    Ok(None)
}

/// The (pseudo)ultrametric `d(x, x')` = first scale at which `x` and `x'`
/// share a block.
pub fn dendrogram_to_ultrametric(theta: &PersistentSet) -> Result<FiniteMetricSpace> {
    let last = theta.final_partition();
    if !last.is_single_block() {
        let b = last.blocks();
        return Err(Error::NotDendrogram(b[0][0].clone(), b[1][0].clone()));
    }
    let ground = &theta.ground;
    let n = ground.len();
    let mut u = vec![f64::INFINITY; n * n];
    for i in 0..n {
        u[i * n + i] = 0.0;
    }
    for level in &theta.levels {
        let idx = level.partition.block_index();
        for i in 0..n {
            for j in i + 1..n {
                if u[i * n + j].is_infinite() && idx[ground[i].as_str()] == idx[ground[j].as_str()] {
                    u[i * n + j] = level.from;
                    u[j * n + i] = level.from;
                }
            }
        }
    }
    Ok(space_from_ultrametric(ground.clone(), u))
}

/// `θ^λ(r) = θ(r / λ)`.
pub fn scale_persistent(theta: &PersistentSet, lambda: f64) -> Result<PersistentSet> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(invalid(format!("scale factor must be positive, got {lambda}")));
    }
    let levels = theta
        .levels
        .iter()
        .map(|l| Level {
            from: l.from * lambda,
            partition: l.partition.clone(),
        })
        .collect();
    Ok(PersistentSet {
        ground: theta.ground.clone(),
        levels,
    })
}
