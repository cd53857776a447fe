//! Finite metric spaces and the constructions every clustering functor is
//! built from: chaining components, the sub-dominant ultrametric, scaling,
//! restriction and quotients.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::io::Length;
use crate::partition::{Partition, PointMap};
use crate::union_find::UnionFind;

/// Validation switches for [`FiniteMetricSpace::new`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MetricOptions {
    /// Permit zero distance between distinct points.
    pub pseudometric: bool,
    /// Permit `+inf` entries.
    pub allow_infinite: bool,
}

impl MetricOptions {
    pub fn pseudometric() -> Self {
        Self {
            pseudometric: true,
            allow_infinite: false,
        }
    }
}

/// A finite set of labelled points with a validated distance table.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    options: MetricOptions,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Length>>,
    #[serde(default)]
    pseudometric: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_infinite: bool,
}

impl Serialize for FiniteMetricSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpace {
            labels: self.labels.clone(),
            dist: self
                .table()
                .into_iter()
                .map(|row| row.into_iter().map(Length).collect())
                .collect(),
            pseudometric: self.options.pseudometric,
            allow_infinite: self.options.allow_infinite,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteMetricSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpace::deserialize(d)?;
        let table = raw
            .dist
            .into_iter()
            .map(|row| row.into_iter().map(|l| l.0).collect())
            .collect();
        FiniteMetricSpace::new(
            raw.labels,
            table,
            MetricOptions {
                pseudometric: raw.pseudometric,
                allow_infinite: raw.allow_infinite,
            },
        )
        .map_err(serde::de::Error::custom)
    }
}

impl FiniteMetricSpace {
    /// Validates `table` against the metric axioms and builds a space.
    pub fn new(labels: Vec<String>, table: Vec<Vec<f64>>, options: MetricOptions) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape {
                labels: n,
                rows: table.len(),
                cols: table.iter().map(Vec::len).find(|&c| c != n).unwrap_or(n),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let dist: Vec<f64> = table.into_iter().flatten().collect();
        let space = Self {
            labels,
            dist,
            options,
        };
        space.check_axioms()?;
        Ok(space)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let l = &self.labels;
        for i in 0..n {
            if self.d(i, i) != 0.0 {
                return Err(Error::NonzeroDiagonal(l[i].clone()));
            }
            for j in 0..n {
                let v = self.d(i, j);
                if v.is_nan() || v < 0.0 {
                    return Err(Error::NegativeDistance(l[i].clone(), l[j].clone()));
                }
                if v != self.d(j, i) {
                    return Err(Error::Asymmetric(l[i].clone(), l[j].clone()));
                }
                if i != j {
                    if v == f64::INFINITY && !self.options.allow_infinite {
                        return Err(Error::InfiniteDistance(l[i].clone(), l[j].clone()));
                    }
                    if v == 0.0 && !self.options.pseudometric {
                        return Err(Error::ZeroDistance(l[i].clone(), l[j].clone()));
                    }
                }
            }
        }
        for i in 0..n {
            for k in i + 1..n {
                let direct = self.d(i, k);
                for j in 0..n {
                    let detour = self.d(i, j) + self.d(j, k);
                    if j != i && j != k && direct > detour + TRIANGLE_RTOL * detour {
                        return Err(Error::Triangle(l[i].clone(), l[j].clone(), l[k].clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn options(&self) -> MetricOptions {
        self.options
    }

    pub fn is_pseudometric(&self) -> bool {
        self.options.pseudometric
    }

    /// Distance between points by index.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.labels.len() + j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Distance between points by label.
    pub fn dist(&self, a: &str, b: &str) -> Result<f64> {
        let i = self
            .index_of(a)
            .ok_or_else(|| Error::UnknownLabel(a.into()))?;
        let j = self
            .index_of(b)
            .ok_or_else(|| Error::UnknownLabel(b.into()))?;
        Ok(self.d(i, j))
    }

    pub fn table(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.len().max(1)).map(<[f64]>::to_vec).take(self.len()).collect()
    }

    /// Sorted distinct off-diagonal distances.
    pub fn distance_values(&self) -> Vec<f64> {
        let n = self.len();
        let mut v: Vec<f64> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.d(i, j))
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Minimum distance between distinct points.
    pub fn separation(&self) -> Result<f64> {
        let n = self.len();
        if n < 2 {
            return Err(Error::TooFewPoints(n));
        }
        Ok(self.distance_values()[0])
    }

    /// Maximum distance; zero for a single point.
    pub fn diameter(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::TooFewPoints(0));
        }
        Ok(self.distance_values().last().copied().unwrap_or(0.0))
    }

    /// `true` when `d(x,z) <= max(d(x,y), d(y,z))` for all triples.
    pub fn is_ultrametric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.d(i, k) <= self.d(i, j).max(self.d(j, k))))
        })
    }

    /// The space with every distance multiplied by `lambda`.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid(format!("scale factor must be positive, got {lambda}")));
        }
        Ok(Self {
            labels: self.labels.clone(),
            dist: self.dist.iter().map(|&v| v * lambda).collect(),
            options: self.options,
        })
    }

    /// The sub-space on `subset` with inherited distances, in the order the
    /// points appear in `self`.
    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<Self> {
        if subset.is_empty() {
            return Err(invalid("cannot restrict to an empty subset"));
        }
        let mut keep = BTreeSet::new();
        for s in subset {
            let i = self
                .index_of(s.as_ref())
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().into()))?;
            keep.insert(i);
        }
        Ok(self.restrict_indices(&keep.into_iter().collect::<Vec<_>>()))
    }

    pub(crate) fn restrict_indices(&self, idx: &[usize]) -> Self {
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let dist = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.d(i, j))
            .collect();
        Self {
            labels,
            dist,
            options: self.options,
        }
    }

    /// Same distances, points renamed through `rename`.
    pub fn relabel(&self, rename: &PointMap) -> Result<Self> {
        let labels = self
            .labels
            .iter()
            .map(|l| {
                rename
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::UnknownLabel(l.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, self.table(), self.options)
    }

    pub(crate) fn from_flat(labels: Vec<String>, dist: Vec<f64>, options: MetricOptions) -> Self {
        debug_assert_eq!(dist.len(), labels.len() * labels.len());
        Self {
            labels,
            dist,
            options,
        }
    }

    fn index_groups_at(&self, delta: f64, strict: bool) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.d(i, j);
                if v < delta || (!strict && v == delta) {
                    uf.union(i, j);
                }
            }
        }
        uf.groups()
    }

    /// Classes of the chaining relation: `x ~ x'` iff a chain joins them
    /// with every consecutive gap at most `delta`.
    pub fn components_at_scale(&self, delta: f64) -> Result<Partition> {
        if !(delta >= 0.0) {
            return Err(invalid(format!("scale must be non-negative, got {delta}")));
        }
        Ok(Partition::from_index_groups(
            &self.labels,
            &self.index_groups_at(delta, false),
        ))
    }

    /// Chaining classes with strictly smaller gaps than `delta`.
    pub fn components_below_scale(&self, delta: f64) -> Result<Partition> {
        if !(delta >= 0.0) {
            return Err(invalid(format!("scale must be non-negative, got {delta}")));
        }
        Ok(Partition::from_index_groups(
            &self.labels,
            &self.index_groups_at(delta, true),
        ))
    }

    /// Collapses every chaining class at scale `r` to one point. The
    /// quotient distance is the sub-dominant ultrametric of the minimal
    /// cross-class distances; the class label is its least member label.
    pub fn quotient_at_scale(&self, r: f64) -> Result<Quotient> {
        if !(r >= 0.0) {
            return Err(invalid(format!("scale must be non-negative, got {r}")));
        }
        let mut groups = self.index_groups_at(r, false);
        for g in &mut groups {
            g.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        }
        groups.sort_by(|a, b| self.labels[a[0]].cmp(&self.labels[b[0]]));
        let m = groups.len();
        let mut w = vec![0.0; m * m];
        for a in 0..m {
            for b in a + 1..m {
                let v = groups[a]
                    .iter()
                    .flat_map(|&i| groups[b].iter().map(move |&j| (i, j)))
                    .map(|(i, j)| self.d(i, j))
                    .fold(f64::INFINITY, f64::min);
                w[a * m + b] = v;
                w[b * m + a] = v;
            }
        }
        let labels: Vec<String> = groups.iter().map(|g| self.labels[g[0]].clone()).collect();
        let mut projection = PointMap::new();
        for (g, rep) in groups.iter().zip(&labels) {
            for &i in g {
                projection.insert(self.labels[i].clone(), rep.clone());
            }
        }
        let dist = subdominant_flat(m, &w);
        let space = Self::from_flat(
            labels,
            dist,
            MetricOptions {
                pseudometric: false,
                allow_infinite: self.options.allow_infinite,
            },
        );
        Ok(Quotient { space, projection })
    }
}

/// Result of [`FiniteMetricSpace::quotient_at_scale`].
#[derive(Debug, Clone, PartialEq)]
pub struct Quotient {
    pub space: FiniteMetricSpace,
    /// Sends each point to the label of its class.
    pub projection: PointMap,
}

/// The equilateral space on `k` points `p1..pk` at mutual distance `delta`.
pub fn delta_space(k: usize, delta: f64) -> Result<FiniteMetricSpace> {
    if k == 0 {
        return Err(invalid("delta space needs at least one point"));
    }
    if k >= 2 && !(delta > 0.0 && delta.is_finite()) {
        return Err(invalid(format!("delta must be positive, got {delta}")));
    }
    let labels = (1..=k).map(|i| format!("p{i}")).collect();
    let dist = (0..k * k)
        .map(|c| if c / k == c % k { 0.0 } else { delta })
        .collect();
    Ok(FiniteMetricSpace::from_flat(labels, dist, MetricOptions::default()))
}

/// Relative slack in the triangle check, so that distances computed from
/// coordinates are not rejected over rounding in the last bits.
pub const TRIANGLE_RTOL: f64 = 1e-12;

/// Checks and builds a space from labels and a square table.
pub fn validate_metric<S: Into<String>>(
    labels: impl IntoIterator<Item = S>,
    table: Vec<Vec<f64>>,
    pseudometric: bool,
) -> Result<FiniteMetricSpace> {
    FiniteMetricSpace::new(
        labels.into_iter().map(Into::into).collect(),
        table,
        MetricOptions {
            pseudometric,
            allow_infinite: false,
        },
    )
}

/// Points on a line at the given coordinates, labelled by coordinate.
pub fn collinear(coords: &[f64]) -> Result<FiniteMetricSpace> {
    let labels: Vec<String> = coords.iter().map(|c| format!("{c}")).collect();
    let table = coords
        .iter()
        .map(|a| coords.iter().map(|b| (a - b).abs()).collect())
        .collect();
    FiniteMetricSpace::new(labels, table, MetricOptions::default())
}

/// Maximal sub-dominant ultrametric of a dissimilarity table: the minimum
/// over chains of the largest step. Entries may be `+inf`.
pub fn subdominant_ultrametric(w: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = w.len();
    if w.iter().any(|r| r.len() != n) {
        return Err(invalid("dissimilarity table must be square"));
    }
    for i in 0..n {
        if w[i][i] != 0.0 {
            return Err(invalid(format!("nonzero diagonal entry at {i}")));
        }
        for j in 0..n {
            if w[i][j].is_nan() || w[i][j] < 0.0 {
                return Err(invalid(format!("negative entry at ({i},{j})")));
            }
            if w[i][j] != w[j][i] {
                return Err(invalid(format!("asymmetric entry at ({i},{j})")));
            }
        }
    }
    let flat: Vec<f64> = w.iter().flatten().copied().collect();
    let u = subdominant_flat(n, &flat);
    Ok(u.chunks(n.max(1)).take(n).map(<[f64]>::to_vec).collect())
}

/// Minimum spanning tree (Prim, dense) followed by a max-edge sweep from
/// every vertex along the tree.
pub(crate) fn subdominant_flat(n: usize, w: &[f64]) -> Vec<f64> {
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    if n > 1 {
        let mut in_tree = vec![false; n];
        let mut key = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        key[0] = 0.0;
        for _ in 0..n {
            let mut best: Option<usize> = None;
            for v in 0..n {
                if !in_tree[v] && best.is_none_or(|b| key[v] < key[b]) {
                    best = Some(v);
                }
            }
            let u = best.expect("unvisited vertex");
            in_tree[u] = true;
            if parent[u] != usize::MAX {
                let p = parent[u];
                adj[u].push((p, w[u * n + p]));
                adj[p].push((u, w[u * n + p]));
            }
            for v in 0..n {
                if !in_tree[v] && (w[u * n + v] < key[v] || parent[v] == usize::MAX) {
                    key[v] = w[u * n + v];
                    parent[v] = u;
                }
            }
        }
    }
    let mut out = vec![0.0; n * n];
    let mut stack = Vec::new();
    for s in 0..n {
        let mut seen = vec![false; n];
        seen[s] = true;
        stack.push((s, 0.0f64));
        while let Some((u, m)) = stack.pop() {
            out[s * n + u] = m;
            for &(v, wt) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, m.max(wt)));
                }
            }
        }
    }
    out
}

/// Builds the ultrametric space from a minimax table, flagging zeros and
/// infinities as needed.
pub(crate) fn space_from_ultrametric(labels: Vec<String>, u: Vec<f64>) -> FiniteMetricSpace {
    let n = labels.len();
    let pseudometric = (0..n).any(|i| (0..n).any(|j| i != j && u[i * n + j] == 0.0));
    let allow_infinite = u.iter().any(|v| v.is_infinite());
    FiniteMetricSpace::from_flat(
        labels,
        u,
        MetricOptions {
            pseudometric,
            allow_infinite,
        },
    )
}

/// Label -> index lookup for a space.
pub(crate) fn label_index(space: &FiniteMetricSpace) -> BTreeMap<&str, usize> {
    space
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc(ab: f64, bc: f64, ac: f64) -> Result<FiniteMetricSpace> {
        validate_metric(
            ["a", "b", "c"],
            vec![vec![0.0, ab, ac], vec![ab, 0.0, bc], vec![ac, bc, 0.0]],
            false,
        )
    }

    #[test]
    fn validation_examples() {
        let two = validate_metric(["a", "b"], vec![vec![0.0, 3.0], vec![3.0, 0.0]], false).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two.dist("a", "b").unwrap(), 3.0);

        let asym = validate_metric(["a", "b"], vec![vec![0.0, 1.0], vec![2.0, 0.0]], false);
        assert!(matches!(asym, Err(Error::Asymmetric(..))));

        assert_eq!(
            abc(1.0, 1.0, 5.0),
            Err(Error::Triangle("a".into(), "b".into(), "c".into()))
        );
    }

    #[test]
    fn validation_error_paths() {
        assert!(matches!(
            validate_metric(["a", "a"], vec![vec![0.0, 1.0], vec![1.0, 0.0]], false),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            validate_metric(["a", "b"], vec![vec![1.0, 1.0], vec![1.0, 0.0]], false),
            Err(Error::NonzeroDiagonal(_))
        ));
        assert!(matches!(
            validate_metric(["a", "b"], vec![vec![0.0, 0.0], vec![0.0, 0.0]], false),
            Err(Error::ZeroDistance(..))
        ));
        assert!(validate_metric(["a", "b"], vec![vec![0.0, 0.0], vec![0.0, 0.0]], true).is_ok());
        assert!(matches!(
            validate_metric(["a", "b"], vec![vec![0.0, -1.0], vec![-1.0, 0.0]], false),
            Err(Error::NegativeDistance(..))
        ));
        assert!(matches!(
            validate_metric(["a"], vec![vec![0.0, 1.0]], false),
            Err(Error::Shape { .. })
        ));
        let inf = vec![vec![0.0, f64::INFINITY], vec![f64::INFINITY, 0.0]];
        assert!(matches!(
            validate_metric(["a", "b"], inf.clone(), false),
            Err(Error::InfiniteDistance(..))
        ));
        let opts = MetricOptions {
            pseudometric: false,
            allow_infinite: true,
        };
        assert!(FiniteMetricSpace::new(vec!["a".into(), "b".into()], inf, opts).is_ok());
    }

    #[test]
    fn delta_spaces() {
        let d = delta_space(2, 5.0).unwrap();
        assert_eq!(d.labels(), ["p1", "p2"]);
        assert_eq!(d.d(0, 1), 5.0);
        assert_eq!(delta_space(1, 1.0).unwrap().len(), 1);
        let t = delta_space(3, 2.0).unwrap();
        assert_eq!(t.separation().unwrap(), 2.0);
        assert_eq!(t.diameter().unwrap(), 2.0);
        assert!(delta_space(0, 1.0).is_err());
        assert!(delta_space(2, 0.0).is_err());
        assert!(delta_space(1, 0.0).is_ok());
    }

    #[test]
    fn separation_and_diameter() {
        assert_eq!(abc(2.0, 1.0, 3.0).unwrap().separation().unwrap(), 1.0);
        let line = collinear(&[0.0, 1.0, 10.0]).unwrap();
        assert_eq!(line.separation().unwrap(), 1.0);
        assert_eq!(line.diameter().unwrap(), 10.0);
        let one = delta_space(1, 1.0).unwrap();
        assert_eq!(one.diameter().unwrap(), 0.0);
        assert_eq!(one.separation(), Err(Error::TooFewPoints(1)));
    }

    #[test]
    fn scaling() {
        assert_eq!(
            delta_space(2, 1.0).unwrap().scale(5.0).unwrap(),
            delta_space(2, 5.0).unwrap()
        );
        let x = collinear(&[0.0, 1.0, 3.0]).unwrap();
        assert_eq!(x.scale(1.0).unwrap(), x);
        assert_eq!(x.scale(2.0).unwrap().scale(0.5).unwrap(), x);
        assert!(x.scale(0.0).is_err());
        assert!(x.scale(-1.0).is_err());
    }

    #[test]
    fn restriction() {
        let x = collinear(&[0.0, 1.0, 3.0]).unwrap();
        assert_eq!(x.restrict(x.labels()).unwrap(), x);
        assert_eq!(x.restrict(&["1"]).unwrap().len(), 1);
        assert!(x.restrict::<&str>(&[]).is_err());
        assert!(matches!(x.restrict(&["7"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn components() {
        let x = collinear(&[0.0, 1.0, 2.0, 10.0]).unwrap();
        let p = x.components_at_scale(1.0).unwrap();
        assert_eq!(p.blocks(), [vec!["0", "1", "2"], vec!["10"]]);
        assert!(x.components_at_scale(0.0).unwrap().is_discrete());
        assert!(x.components_at_scale(-1.0).is_err());
        assert!(x.components_below_scale(1.0).unwrap().is_discrete());
        let d2 = delta_space(2, 0.7).unwrap();
        assert!(d2.components_at_scale(0.7).unwrap().is_single_block());
    }

    #[test]
    fn subdominant_examples() {
        let u = subdominant_ultrametric(&[vec![0.0, 4.0], vec![4.0, 0.0]]).unwrap();
        assert_eq!(u[0][1], 4.0);
        let line = collinear(&[0.0, 1.0, 3.0]).unwrap();
        let u = subdominant_ultrametric(&line.table()).unwrap();
        assert_eq!(u[0][2], 2.0);
        assert_eq!(u[0][1], 1.0);
        assert_eq!(u[1][2], 2.0);
        let ultra = vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 3.0],
            vec![3.0, 3.0, 0.0],
        ];
        assert_eq!(subdominant_ultrametric(&ultra).unwrap(), ultra);
        assert!(subdominant_ultrametric(&[vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(subdominant_ultrametric(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
    }

    #[test]
    fn subdominant_with_infinite_entries() {
        let inf = f64::INFINITY;
        let w = vec![
            vec![0.0, 1.0, inf],
            vec![1.0, 0.0, inf],
            vec![inf, inf, 0.0],
        ];
        let u = subdominant_ultrametric(&w).unwrap();
        assert_eq!(u, w);
        let w = vec![
            vec![0.0, 1.0, inf],
            vec![1.0, 0.0, 2.0],
            vec![inf, 2.0, 0.0],
        ];
        assert_eq!(subdominant_ultrametric(&w).unwrap()[0][2], 2.0);
    }

    #[test]
    fn quotients() {
        let x = collinear(&[0.0, 1.0, 2.0, 10.0]).unwrap();
        let q = x.quotient_at_scale(1.0).unwrap();
        assert_eq!(q.space.len(), 2);
        assert_eq!(q.space.separation().unwrap(), 8.0);
        assert_eq!(q.projection["2"], "0");
        assert_eq!(q.projection["10"], "10");

        let q0 = x.quotient_at_scale(0.5).unwrap();
        assert_eq!(q0.space.len(), 4);
        assert!(q0.projection.iter().all(|(a, b)| a == b));

        assert_eq!(x.quotient_at_scale(10.0).unwrap().space.len(), 1);
        assert!(x.quotient_at_scale(-0.1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = collinear(&[0.0, 0.5, 2.0]).unwrap();
        let text = crate::io::to_json(&x);
        assert!(text.contains("\"pseudometric\": false"));
        let back: FiniteMetricSpace = crate::io::from_json(&text).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"labels":["a","b"],"dist":[[0,1],[2,0]]}"#;
        assert!(crate::io::from_json::<FiniteMetricSpace>(bad).is_err());
    }
}
