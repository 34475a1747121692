// SPDX-License-Identifier: Apache-2.0

//! Label-overlap measures: graph edit distance and its normalizations.

use std::collections::HashMap;

use crate::graph::LabeledDigraph;
use crate::scalar::Scalar;

/// Vertex and arc overlap counts of two graphs, matched by label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub v1: usize,
    pub v2: usize,
    pub a1: usize,
    pub a2: usize,
    pub shared_vertices: usize,
    pub shared_arcs: usize,
}

impl Overlap {
    pub fn of<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> Self {
        let shared_vertices = g1
            .vertices()
            .iter()
            .filter(|v| g2.contains_label(&v.label))
            .count();
        let shared_arcs = g1
            .labeled_arcs()
            .filter(|(s, t, _)| match (g2.index_of(s), g2.index_of(t)) {
                (Some(s2), Some(t2)) => g2.has_arc(s2, t2),
                _ => false,
            })
            .count();
        Overlap {
            v1: g1.vertex_count(),
            v2: g2.vertex_count(),
            a1: g1.arc_count(),
            a2: g2.arc_count(),
            shared_vertices,
            shared_arcs,
        }
    }

    fn total(&self) -> usize {
        self.v1 + self.v2 + self.a1 + self.a2
    }

    fn shared(&self) -> usize {
        self.shared_vertices + self.shared_arcs
    }
}

/// Ratio `(n1 + n2 - 2 shared) / (n1 + n2)`, zero when both sides are empty.
fn mismatch_ratio<T: Scalar>(n1: usize, n2: usize, shared: usize) -> T {
    let n = n1 + n2;
    if n == 0 {
        T::zero()
    } else {
        T::from_count(n - 2 * shared) / T::from_count(n)
    }
}

/// Graph edit distance under label matching with unit insertion/deletion cost.
pub fn ged<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> T {
    let o = Overlap::of(g1, g2);
    T::from_count(o.total() - 2 * o.shared())
}

pub fn ges<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> T {
    let o = Overlap::of(g1, g2);
    let half = T::lit(0.5);
    let v: T = mismatch_ratio(o.v1, o.v2, o.shared_vertices);
    let a: T = mismatch_ratio(o.a1, o.a2, o.shared_arcs);
    T::one() - half * (v + a)
}

pub fn wal<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> T {
    let o = Overlap::of(g1, g2);
    let den = o.total() - o.shared();
    if den == 0 {
        return T::one();
    }
    T::from_count(o.shared()) / T::from_count(den)
}

pub fn veo<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> T {
    let o = Overlap::of(g1, g2);
    if o.total() == 0 {
        return T::one();
    }
    T::from_count(2 * o.shared()) / T::from_count(o.total())
}

/// Relative difference `|x - y| / max(x, y)`, 0 when both are zero.
fn distance<T: Scalar>(x: T, y: T) -> T {
    let m = x.max(y);
    if m <= T::zero() {
        T::zero()
    } else {
        (x - y).abs() / m
    }
}

fn weighted_part<T: Scalar>(n1: usize, n2: usize, matched: impl Iterator<Item = (T, T)>) -> T {
    if n1 + n2 == 0 {
        return T::one();
    }
    let s: T = matched.map(|(x, y)| T::one() - distance(x, y)).sum();
    (s + s) / T::from_count(n1 + n2)
}

/// Weight-sensitive overlap similarity; unmatched vertices and arcs count as
/// full mismatches.
pub fn wges<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> T {
    let vertex = weighted_part(
        g1.vertex_count(),
        g2.vertex_count(),
        g1.vertices()
            .iter()
            .filter_map(|v| g2.index_of(&v.label).map(|j| (v.weight, g2.weight(j)))),
    );
    let arcs2: HashMap<(&str, &str), T> = g2.labeled_arcs().map(|(s, t, w)| ((s, t), w)).collect();
    let arc = weighted_part(
        g1.arc_count(),
        g2.arc_count(),
        g1.labeled_arcs()
            .filter_map(|(s, t, w)| arcs2.get(&(s, t)).map(|&w2| (w, w2))),
    );
    (vertex + arc) * T::lit(0.5)
}
