//! Morphisms between finite metric spaces.
//!
//! Three nested categories share the same objects: isometries (`Iso`),
//! injective distance non-increasing maps (`Inj`) and arbitrary distance
//! non-increasing maps (`Gen`). This module checks morphisms, composes
//! them, searches for morphisms out of small "motif" spaces and computes
//! the least scaling of a motif that admits one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{label_index, FiniteMetricSpace};
use crate::partition::PointMap;

/// Which family of maps counts as a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CategoryTag {
    Iso,
    Inj,
    Gen,
}

/// Largest motif accepted by the morphism search unless forced.
pub const DEFAULT_MAX_MOTIF: usize = 8;

/// Guard on the exponential morphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_motif: usize,
    pub force: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_motif: DEFAULT_MAX_MOTIF,
            force: false,
        }
    }
}

impl SearchLimits {
    /// Default limits, with `CLUST_MAX_MOTIF` overriding the motif size.
    pub fn from_env() -> Self {
        let max_motif = std::env::var("CLUST_MAX_MOTIF")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_MOTIF);
        Self {
            max_motif,
            force: false,
        }
    }

    pub fn forced() -> Self {
        Self {
            force: true,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, size: usize) -> Result<()> {
        if !self.force && size > self.max_motif {
            return Err(Error::SearchLimit {
                size,
                limit: self.max_motif,
            });
        }
        Ok(())
    }
}

/// A total map from the points of `source` to the points of `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMap {
    source: FiniteMetricSpace,
    target: FiniteMetricSpace,
    assignment: Vec<usize>,
}

/// Why a map fails to be a morphism, with a witness pair of labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismViolation {
    pub reason: ViolationKind,
    pub pair: (String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `d_Y(f(x), f(x')) > d_X(x, x')`.
    Expands,
    /// Two source points share an image.
    NotInjective,
    /// A target point is missed (pair repeats the missed label).
    NotSurjective,
    /// `d_Y(f(x), f(x')) != d_X(x, x')`.
    NotIsometric,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    source: FiniteMetricSpace,
    target: FiniteMetricSpace,
    assignment: BTreeMap<String, String>,
}

impl Serialize for MetricMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMap {
            source: self.source.clone(),
            target: self.target.clone(),
            assignment: self.point_map(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MetricMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMap::deserialize(d)?;
        MetricMap::new(raw.source, raw.target, &raw.assignment).map_err(serde::de::Error::custom)
    }
}

impl MetricMap {
    /// Builds a map from a label assignment, which must be total on the
    /// source and land in the target.
    pub fn new(
        source: FiniteMetricSpace,
        target: FiniteMetricSpace,
        assignment: &PointMap,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::MalformedMap(format!(
                "assignment has {} entries for {} source points",
                assignment.len(),
                source.len()
            )));
        }
        let tidx = label_index(&target);
        let assignment = source
            .labels()
            .iter()
            .map(|x| {
                let y = assignment
                    .get(x)
                    .ok_or_else(|| Error::MalformedMap(format!("`{x}` has no image")))?;
                tidx.get(y.as_str())
                    .copied()
                    .ok_or_else(|| Error::MalformedMap(format!("`{y}` is not a target point")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source,
            target,
            assignment,
        })
    }

    pub(crate) fn from_indices(
        source: FiniteMetricSpace,
        target: FiniteMetricSpace,
        assignment: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(assignment.len(), source.len());
        Self {
            source,
            target,
            assignment,
        }
    }

    pub fn identity(x: &FiniteMetricSpace) -> Self {
        Self::from_indices(x.clone(), x.clone(), (0..x.len()).collect())
    }

    /// The map sending every point of `source` to `point` of `target`.
    pub fn constant(source: &FiniteMetricSpace, target: &FiniteMetricSpace, point: &str) -> Result<Self> {
        let j = target
            .index_of(point)
            .ok_or_else(|| Error::UnknownLabel(point.into()))?;
        Ok(Self::from_indices(
            source.clone(),
            target.clone(),
            vec![j; source.len()],
        ))
    }

    pub fn source(&self) -> &FiniteMetricSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteMetricSpace {
        &self.target
    }

    /// Image indices, in source order.
    pub fn indices(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, label: &str) -> Option<&str> {
        let i = self.source.index_of(label)?;
        Some(self.target.labels()[self.assignment[i]].as_str())
    }

    pub fn point_map(&self) -> PointMap {
        self.source
            .labels()
            .iter()
            .zip(&self.assignment)
            .map(|(x, &j)| (x.clone(), self.target.labels()[j].clone()))
            .collect()
    }

    /// First violation of the conditions for `tag`, if any.
    pub fn check(&self, tag: CategoryTag) -> Option<MorphismViolation> {
        let n = self.source.len();
        let sl = self.source.labels();
        let f = &self.assignment;
        let witness = |reason, i: usize, j: usize| MorphismViolation {
            reason,
            pair: (sl[i].clone(), sl[j].clone()),
        };
        if tag != CategoryTag::Gen {
            for i in 0..n {
                for j in i + 1..n {
                    if f[i] == f[j] {
                        return Some(witness(ViolationKind::NotInjective, i, j));
                    }
                }
            }
        }
        if tag == CategoryTag::Iso {
            let mut hit = vec![false; self.target.len()];
            for &j in f {
                hit[j] = true;
            }
            if let Some(missing) = hit.iter().position(|h| !h) {
                let l = self.target.labels()[missing].clone();
                return Some(MorphismViolation {
                    reason: ViolationKind::NotSurjective,
                    pair: (l.clone(), l),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let dx = self.source.d(i, j);
                let dy = self.target.d(f[i], f[j]);
                if tag == CategoryTag::Iso && dy != dx {
                    return Some(witness(ViolationKind::NotIsometric, i, j));
                }
                if dy > dx {
                    return Some(witness(ViolationKind::Expands, i, j));
                }
            }
        }
        None
    }

    pub fn is_morphism(&self, tag: CategoryTag) -> bool {
        self.check(tag).is_none()
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &MetricMap) -> Result<MetricMap> {
        if self.target != other.source {
            return Err(Error::InvalidArgument(
                "cannot compose: target and source differ".into(),
            ));
        }
        Ok(Self::from_indices(
            self.source.clone(),
            other.target.clone(),
            self.assignment.iter().map(|&j| other.assignment[j]).collect(),
        ))
    }
}

/// `g ∘ f`.
pub fn compose(f: &MetricMap, g: &MetricMap) -> Result<MetricMap> {
    f.then(g)
}

/// A positive scale factor `num / den`, compared by cross-multiplication so
/// that the candidate ratio that defines it is tested exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Ratio {
    pub num: f64,
    pub den: f64,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1.0, den: 1.0 };

    pub fn value(self) -> f64 {
        self.num / self.den
    }
}

const ISO_RTOL: f64 = 1e-9;

struct Search<'a> {
    motif: &'a FiniteMetricSpace,
    space: &'a FiniteMetricSpace,
    tag: CategoryTag,
    scale: Ratio,
    order: Vec<usize>,
    candidates: Vec<usize>,
    pins: Vec<usize>,
    assign: Vec<usize>,
    used: Vec<usize>,
}

impl Search<'_> {
    fn fits(&self, dx: f64, dw: f64) -> bool {
        let lhs = dx * self.scale.den;
        let rhs = self.scale.num * dw;
        match self.tag {
            CategoryTag::Iso if self.scale == Ratio::ONE => dx == dw,
            CategoryTag::Iso => (lhs - rhs).abs() <= ISO_RTOL * lhs.abs().max(rhs.abs()),
            _ => lhs <= rhs,
        }
    }

    fn uncovered_pins(&self) -> usize {
        self.pins.iter().filter(|&&p| self.used[p] == 0).count()
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.uncovered_pins() == 0;
        }
        if self.order.len() - depth < self.uncovered_pins() {
            return false;
        }
        let p = self.order[depth];
        for ci in 0..self.candidates.len() {
            let y = self.candidates[ci];
            if self.tag != CategoryTag::Gen && self.used[y] > 0 {
                continue;
            }
            let ok = self.order[..depth].iter().all(|&q| {
                self.fits(self.space.d(y, self.assign[q]), self.motif.d(p, q))
            });
            if !ok {
                continue;
            }
            self.assign[p] = y;
            self.used[y] += 1;
            if self.run(depth + 1) {
                return true;
            }
            self.used[y] -= 1;
        }
        false
    }
}

fn pin_indices(x: &FiniteMetricSpace, pin: Option<(&str, &str)>) -> Result<Vec<usize>> {
    let Some((a, b)) = pin else {
        return Ok(Vec::new());
    };
    let i = x.index_of(a).ok_or_else(|| Error::UnknownLabel(a.into()))?;
    let j = x.index_of(b).ok_or_else(|| Error::UnknownLabel(b.into()))?;
    Ok(if i == j { vec![i] } else { vec![i, j] })
}

/// Core search over index pins, without the size guard.
pub(crate) fn find_assignment(
    motif: &FiniteMetricSpace,
    space: &FiniteMetricSpace,
    tag: CategoryTag,
    pins: &[usize],
    scale: Ratio,
) -> Option<Vec<usize>> {
    let m = motif.len();
    let n = space.len();
    if m == 0 || n == 0 {
        return None;
    }
    match tag {
        CategoryTag::Iso if m != n => return None,
        CategoryTag::Inj if m > n => return None,
        _ => {}
    }
    if pins.len() > m {
        return None;
    }
    // Most constrained motif points first.
    let mut order: Vec<usize> = (0..m).collect();
    let weight = |p: usize| (0..m).map(|q| motif.d(p, q)).sum::<f64>();
    order.sort_by(|&a, &b| weight(b).total_cmp(&weight(a)).then(a.cmp(&b)));
    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by(|&a, &b| space.labels()[a].cmp(&space.labels()[b]));
    let mut search = Search {
        motif,
        space,
        tag,
        scale,
        order,
        candidates,
        pins: pins.to_vec(),
        assign: vec![usize::MAX; m],
        used: vec![0; n],
    };
    search.run(0).then_some(search.assign)
}

/// Searches for a `tag` morphism `motif -> space` whose image contains both
/// pinned points. Candidates are tried in label order, so the result is
/// deterministic.
pub fn exists_morphism(
    motif: &FiniteMetricSpace,
    space: &FiniteMetricSpace,
    tag: CategoryTag,
    pin: Option<(&str, &str)>,
    limits: &SearchLimits,
) -> Result<Option<MetricMap>> {
    limits.check(motif.len())?;
    let pins = pin_indices(space, pin)?;
    Ok(find_assignment(motif, space, tag, &pins, Ratio::ONE)
        .map(|a| MetricMap::from_indices(motif.clone(), space.clone(), a)))
}

/// Least `lambda > 0` such that a `tag` morphism `lambda·motif -> space`
/// covering the pin exists; `+inf` when no scaling works.
///
/// The infimum is attained at some ratio `d_X(a,b) / d_motif(p,q)`, so only
/// those candidates are tested. When every scaling works because no pair of
/// distinct images is forced, returns the infimum `0.0`, or `1.0` when one
/// of the spaces has a single point.
pub fn minimal_scale(
    motif: &FiniteMetricSpace,
    space: &FiniteMetricSpace,
    tag: CategoryTag,
    pin: Option<(&str, &str)>,
    limits: &SearchLimits,
) -> Result<f64> {
    limits.check(motif.len())?;
    let pins = pin_indices(space, pin)?;
    minimal_scale_indexed(motif, space, tag, &pins)
}

pub(crate) fn minimal_scale_indexed(
    motif: &FiniteMetricSpace,
    space: &FiniteMetricSpace,
    tag: CategoryTag,
    pins: &[usize],
) -> Result<f64> {
    let m = motif.len();
    for p in 0..m {
        for q in p + 1..m {
            if motif.d(p, q) == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "motif has zero distance between `{}` and `{}`",
                    motif.labels()[p],
                    motif.labels()[q]
                )));
            }
        }
    }
    Ok(minimal_ratio(motif, space, tag, pins).map_or(f64::INFINITY, Ratio::value))
}

fn minimal_ratio(
    motif: &FiniteMetricSpace,
    space: &FiniteMetricSpace,
    tag: CategoryTag,
    pins: &[usize],
) -> Option<Ratio> {
    let (m, n) = (motif.len(), space.len());
    let mut candidates = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for p in 0..m {
                for q in p + 1..m {
                    candidates.push(Ratio {
                        num: space.d(a, b),
                        den: motif.d(p, q),
                    });
                }
            }
        }
    }
    candidates.sort_by(|x, y| x.value().total_cmp(&y.value()));
    candidates.dedup_by(|x, y| x.value() == y.value());
    let feasible = |r: Ratio| find_assignment(motif, space, tag, pins, r).is_some();

    // A map forcing no pair of distinct images works at every scale.
    let tiny = Ratio {
        num: 0.0,
        den: 1.0,
    };
    if tag != CategoryTag::Iso && find_assignment(motif, space, tag, pins, tiny).is_some() {
        // The infimum 0 is not attained; with no pairs at all report 1.
        return Some(if candidates.is_empty() { Ratio::ONE } else { tiny });
    }
    if tag == CategoryTag::Iso {
        if m == 1 && n == 1 {
            return Some(Ratio::ONE);
        }
        return candidates.into_iter().find(|&r| feasible(r));
    }
    let last = *candidates.last()?;
    if !feasible(last) {
        return None;
    }
    // First feasible candidate; feasibility is monotone in the scale.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(candidates[lo])
}
