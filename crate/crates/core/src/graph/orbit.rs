// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;

use super::{GraphError, LabeledDigraph};
use crate::scalar::Scalar;

/// Subgraph induced by every vertex within `n` directed hops of `v`.
pub fn orbit<T: Scalar>(
    g: &LabeledDigraph<T>,
    v: usize,
    n: usize,
) -> Result<LabeledDigraph<T>, GraphError> {
    if v >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(v));
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut keep = vec![v];
    while let Some(u) = queue.pop_front() {
        if dist[u] == n {
            continue;
        }
        for w in g.successors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                keep.push(w);
                queue.push_back(w);
            }
        }
    }
    g.induced_subgraph(&keep)
}
