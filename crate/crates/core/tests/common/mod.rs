//! Brute-force oracles and generators shared by the integration tests.
//! Nothing here calls the library routine it is used to check.

#![allow(dead_code)]

use fclust::{CategoryTag, FiniteMetricSpace, MetricOptions, Partition};
use proptest::prelude::*;

/// Minimum over all simple chains from `i` to `j` of the largest step.
pub fn brute_minimax(w: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = w.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut visited = vec![false; n];
                visited[i] = true;
                out[i][j] = chains(w, i, j, &mut visited, 0.0);
            }
        }
    }
    out
}

fn chains(w: &[Vec<f64>], at: usize, goal: usize, visited: &mut [bool], worst: f64) -> f64 {
    if at == goal {
        return worst;
    }
    let mut best = f64::INFINITY;
    for next in 0..w.len() {
        if !visited[next] {
            visited[next] = true;
            best = best.min(chains(w, next, goal, visited, worst.max(w[at][next])));
            visited[next] = false;
        }
    }
    best
}

/// Every map `0..m -> 0..n`, injective if asked.
pub fn all_maps(m: usize, n: usize, injective: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(m: usize, n: usize, inj: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for y in 0..n {
            if inj && cur.contains(&y) {
                continue;
            }
            cur.push(y);
            go(m, n, inj, cur, out);
            cur.pop();
        }
    }
    go(m, n, injective, &mut cur, &mut out);
    out
}

/// Least `λ` over all maps `ω -> X` whose image contains `pins`, where each
/// map needs `λ >= d_X(f p, f q) / d_ω(p, q)`. `+inf` when no map exists.
pub fn brute_min_scale(w: &FiniteMetricSpace, x: &FiniteMetricSpace, tag: CategoryTag, pins: &[usize]) -> f64 {
    let m = w.len();
    let mut best = f64::INFINITY;
    for f in all_maps(m, x.len(), tag != CategoryTag::Gen) {
        if !pins.iter().all(|p| f.contains(p)) {
            continue;
        }
        let mut need: f64 = 0.0;
        for p in 0..m {
            for q in p + 1..m {
                need = need.max(x.d(f[p], f[q]) / w.d(p, q));
            }
        }
        best = best.min(need);
    }
    best
}

/// Chaining components of the graph joining pairs that lie in some
/// `m`-subset of diameter `<= delta`, found by listing all subsets.
pub fn brute_clique_partition(x: &FiniteMetricSpace, m: usize, delta: f64) -> Partition {
    let n = x.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], i: usize) -> usize {
        if p[i] == i {
            i
        } else {
            let r = root(p, p[i]);
            p[i] = r;
            r
        }
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let pts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let diam = pts
            .iter()
            .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
            .map(|(a, b)| x.d(a, b))
            .fold(0.0, f64::max);
        if diam <= delta {
            for &p in &pts[1..] {
                let (a, b) = (root(&mut parent, pts[0]), root(&mut parent, p));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<String>> = Default::default();
    for i in 0..n {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(x.labels()[i].clone());
    }
    Partition::new(x.labels().to_vec(), groups.into_values().collect()).unwrap()
}

pub fn is_strong_ultrametric(u: &[Vec<f64>]) -> bool {
    let n = u.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| u[i][k] <= u[i][j].max(u[j][k]))))
}

/// Shortest-path closure of integer edge weights: a metric with many ties.
pub fn path_metric(n: usize, weights: &[u8]) -> FiniteMetricSpace {
    let mut d = vec![vec![0.0; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let v = f64::from(weights[k % weights.len()].max(1));
            d[i][j] = v;
            d[j][i] = v;
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new(labels, d, MetricOptions::default()).unwrap()
}

pub fn plane_metric(pts: &[(f64, f64)]) -> FiniteMetricSpace {
    let labels = (0..pts.len()).map(|i| format!("q{i}")).collect();
    let table = pts
        .iter()
        .map(|a| pts.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect())
        .collect();
    FiniteMetricSpace::new(labels, table, MetricOptions::default()).unwrap()
}

/// Metric spaces with up to `max_n` points: integer path metrics (ties)
/// or distinct points in the plane.
pub fn arb_space(max_n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    let ints = (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1u8..=9, n * (n - 1) / 2 + 1).prop_map(move |w| path_metric(n, &w))
    });
    let plane = proptest::collection::btree_set((0u16..200, 0u16..200), 1..=max_n).prop_map(|s| {
        let pts: Vec<(f64, f64)> = s.into_iter().map(|(a, b)| (f64::from(a) / 20.0, f64::from(b) / 20.0)).collect();
        plane_metric(&pts)
    });
    prop_oneof![ints, plane]
}

/// Symmetric non-negative tables with zero diagonal; some entries `+inf`.
pub fn arb_table(max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![8 => (0u8..20).prop_map(f64::from), 1 => Just(f64::INFINITY)], n * n)
            .prop_map(move |v| {
                let mut t = vec![vec![0.0; n]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        t[i][j] = v[i * n + j];
                        t[j][i] = v[i * n + j];
                    }
                }
                t
            })
    })
}
