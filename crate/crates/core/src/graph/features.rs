// SPDX-License-Identifier: Apache-2.0

use super::{LabeledDigraph, SimpleGraph};
use crate::scalar::Scalar;

pub const NETSIMILE_DIM: usize = 35;

/// Seven per-vertex structural features on the undirected simplification,
/// each aggregated by median, mean, sd, skewness and excess kurtosis.
/// Layout is feature-major: `[deg.median, deg.mean, ..., deg.kurt, clust.median, ...]`.
pub fn netsimile_features<T: Scalar>(g: &LabeledDigraph<T>) -> Vec<T> {
    let s = SimpleGraph::from_digraph(g);
    let n = s.vertex_count();
    let deg: Vec<usize> = (0..n).map(|v| s.degree(v)).collect();
    let links: Vec<usize> = (0..n).map(|v| s.neighbor_links(v)).collect();
    let clust: Vec<T> = (0..n)
        .map(|v| {
            let d = deg[v];
            if d < 2 {
                T::zero()
            } else {
                T::from_count(2 * links[v]) / T::from_count(d * (d - 1))
            }
        })
        .collect();

    let mut columns: [Vec<T>; 7] = Default::default();
    let mut in_ego = vec![false; n];
    let mut marked = vec![false; n];
    for v in 0..n {
        let nb = s.neighbors(v);
        let d = nb.len();
        columns[0].push(T::from_count(d));
        columns[1].push(clust[v]);
        if d == 0 {
            columns[2].push(T::zero());
            columns[3].push(T::zero());
        } else {
            let dn = T::from_count(d);
            columns[2].push(nb.iter().map(|&u| T::from_count(deg[u])).sum::<T>() / dn);
            columns[3].push(nb.iter().map(|&u| clust[u]).sum::<T>() / dn);
        }
        columns[4].push(T::from_count(d + links[v]));

        in_ego[v] = true;
        for &u in nb {
            in_ego[u] = true;
        }
        let mut leaving = 0usize;
        let mut outside = Vec::new();
        for &x in std::iter::once(&v).chain(nb) {
            for &y in s.neighbors(x) {
                if !in_ego[y] {
                    leaving += 1;
                    if !marked[y] {
                        marked[y] = true;
                        outside.push(y);
                    }
                }
            }
        }
        columns[5].push(T::from_count(leaving));
        columns[6].push(T::from_count(outside.len()));
        in_ego[v] = false;
        for &u in nb {
            in_ego[u] = false;
        }
        for y in outside {
            marked[y] = false;
        }
    }

    let mut out = Vec::with_capacity(NETSIMILE_DIM);
    for col in &columns {
        out.extend_from_slice(&aggregate(col));
    }
    out
}

/// (median, mean, population sd, skewness, excess kurtosis). A constant
/// sample has zero spread, skew and kurtosis.
pub(crate) fn aggregate<T: Scalar>(xs: &[T]) -> [T; 5] {
    if xs.is_empty() {
        return [T::zero(); 5];
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite features"));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / T::lit(2.0)
    };
    let nf = T::from_count(n);
    let mean = xs.iter().copied().sum::<T>() / nf;
    if sorted[0] == sorted[n - 1] {
        return [median, sorted[0], T::zero(), T::zero(), T::zero()];
    }
    let (mut m2, mut m3, mut m4) = (T::zero(), T::zero(), T::zero());
    for &x in xs {
        let d = x - mean;
        let d2 = d * d;
        m2 = m2 + d2;
        m3 = m3 + d2 * d;
        m4 = m4 + d2 * d2;
    }
    m2 = m2 / nf;
    m3 = m3 / nf;
    m4 = m4 / nf;
    let sd = m2.sqrt();
    [
        median,
        mean,
        sd,
        m3 / (m2 * sd),
        m4 / (m2 * m2) - T::lit(3.0),
    ]
}
