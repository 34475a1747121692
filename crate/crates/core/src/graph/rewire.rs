// SPDX-License-Identifier: Apache-2.0

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DiArc, LabeledDigraph};
use crate::scalar::Scalar;

/// Erdős–Rényi rewiring: same vertices, the same number of arcs placed
/// uniformly over all ordered pairs (loops included), carrying a random
/// permutation of the original arc weights.
pub fn er_rewire<T: Scalar>(g: &LabeledDigraph<T>, seed: u64) -> LabeledDigraph<T> {
    let m = g.arc_count();
    if m == 0 {
        return g.clone();
    }
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots = index::sample(&mut rng, n * n, m).into_vec();
    slots.sort_unstable();
    let mut payload: Vec<(T, String)> = g
        .arcs()
        .iter()
        .map(|a| (a.weight, a.kind.clone()))
        .collect();
    payload.shuffle(&mut rng);
    let arcs = slots
        .into_iter()
        .zip(payload)
        .map(|(slot, (weight, kind))| DiArc {
            source: slot / n,
            target: slot % n,
            weight,
            kind,
        })
        .collect();
    g.with_arcs(arcs)
        .expect("rewired arcs are distinct and in range")
}
