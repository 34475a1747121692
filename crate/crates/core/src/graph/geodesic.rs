// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use super::{GraphError, LabeledDigraph};
use crate::scalar::Scalar;

/// All-pairs shortest-path lengths before any sentinel is applied.
/// `None` marks an unreachable pair.
#[derive(Clone, Debug, PartialEq)]
pub struct RawDistances<T> {
    n: usize,
    data: Vec<Option<T>>,
}

impl<T: Scalar> RawDistances<T> {
    /// Hop counts (`weighted = false`) or sums of arc lengths `max/ν(a)`.
    pub fn compute(g: &LabeledDigraph<T>, weighted: bool) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let lengths = if weighted {
            let max = g.max_arc_weight().unwrap_or_else(T::one);
            let mut out = Vec::with_capacity(g.arc_count());
            for a in g.arcs() {
                if !(a.weight > T::zero()) {
                    return Err(GraphError::NonPositiveArcWeight(a.weight.as_f64()));
                }
                out.push(T::one() / (a.weight / max));
            }
            Some(out)
        } else {
            None
        };
        let rows: Vec<Vec<Option<T>>> = (0..n)
            .into_par_iter()
            .map(|s| match &lengths {
                Some(len) => dijkstra(g, s, len),
                None => bfs(g, s),
            })
            .collect();
        Ok(RawDistances {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, from: usize, to: usize) -> Option<T> {
        self.data[from * self.n + to]
    }

    /// Distance with unreachable pairs and pairs beyond `cap` or
    /// `sentinel` replaced by `sentinel`.
    pub fn capped(&self, from: usize, to: usize, cap: Option<T>, sentinel: T) -> T {
        match self.get(from, to) {
            Some(d) if d <= sentinel && cap.is_none_or(|c| d <= c) => d,
            _ => sentinel,
        }
    }

    /// Dense matrix with sentinel `|V|`.
    pub fn to_matrix(&self, cap: Option<T>) -> Vec<Vec<T>> {
        let sentinel = T::from_count(self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.capped(i, j, cap, sentinel))
                    .collect()
            })
            .collect()
    }
}

/// Shortest-path matrix; unreachable pairs and distances above `cap` or
/// above `|V|` read as `|V|`. `cap = None` means no cap.
pub fn geodesic_matrix<T: Scalar>(
    g: &LabeledDigraph<T>,
    weighted: bool,
    cap: Option<T>,
) -> Result<Vec<Vec<T>>, GraphError> {
    Ok(RawDistances::compute(g, weighted)?.to_matrix(cap))
}

fn bfs<T: Scalar>(g: &LabeledDigraph<T>, s: usize) -> Vec<Option<T>> {
    let mut hops = vec![usize::MAX; g.vertex_count()];
    hops[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u) {
            if hops[w] == usize::MAX {
                hops[w] = hops[u] + 1;
                queue.push_back(w);
            }
        }
    }
    hops.into_iter()
        .map(|h| (h != usize::MAX).then(|| T::from_count(h)))
        .collect()
}

struct Entry<T>(T, usize);

impl<T: Scalar> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Entry<T> {}

impl<T: Scalar> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Entry<T> {
    // reversed: BinaryHeap pops the smallest distance first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .partial_cmp(&self.0)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.1.cmp(&self.1))
    }
}

fn dijkstra<T: Scalar>(g: &LabeledDigraph<T>, s: usize, lengths: &[T]) -> Vec<Option<T>> {
    let mut dist: Vec<Option<T>> = vec![None; g.vertex_count()];
    dist[s] = Some(T::zero());
    let mut heap = BinaryHeap::from([Entry(T::zero(), s)]);
    while let Some(Entry(d, u)) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        for &ai in &g.out_adj[u] {
            let a = &g.arcs[ai];
            let nd = d + lengths[ai];
            if dist[a.target].is_none_or(|cur| nd < cur) {
                dist[a.target] = Some(nd);
                heap.push(Entry(nd, a.target));
            }
        }
    }
    dist
}
