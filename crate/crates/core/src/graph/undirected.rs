// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

use super::LabeledDigraph;
use crate::scalar::Scalar;

/// Undirected simplification of a digraph: loops dropped, the two arcs of a
/// reciprocal pair merged into one edge carrying their mean weight.
#[derive(Clone, Debug)]
pub struct SimpleGraph<T> {
    neighbors: Vec<Vec<usize>>,
    weights: HashMap<(usize, usize), T>,
}

impl<T: Scalar> SimpleGraph<T> {
    pub fn from_digraph(g: &LabeledDigraph<T>) -> Self {
        let n = g.vertex_count();
        let mut weights: HashMap<(usize, usize), T> = HashMap::new();
        for a in g.arcs() {
            if a.source == a.target {
                continue;
            }
            let key = (a.source.min(a.target), a.source.max(a.target));
            if weights.contains_key(&key) {
                continue;
            }
            let w = match g.arc_weight(a.target, a.source) {
                Some(back) => (a.weight + back) / T::lit(2.0),
                None => a.weight,
            };
            weights.insert(key, w);
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(u, w) in weights.keys() {
            neighbors[u].push(w);
            neighbors[w].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        SimpleGraph { neighbors, weights }
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u != w && self.neighbors[u].binary_search(&w).is_ok()
    }

    pub fn weight(&self, u: usize, w: usize) -> Option<T> {
        self.weights.get(&(u.min(w), u.max(w))).copied()
    }

    pub fn max_weight(&self) -> Option<T> {
        self.weights.values().copied().reduce(T::max)
    }

    /// Number of edges among the neighbors of `v`.
    pub fn neighbor_links(&self, v: usize) -> usize {
        let nb = &self.neighbors[v];
        let mut count = 0;
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if self.has_edge(u, w) {
                    count += 1;
                }
            }
        }
        count
    }
}
