// SPDX-License-Identifier: Apache-2.0

//! Geodesic-proximity cosine similarity on label-aligned graph pairs.

use std::collections::BTreeSet;

use crate::graph::{GraphError, LabeledDigraph, RawDistances};
use crate::scalar::{cosine, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Two graphs padded to a common label set. Position `k` refers to the
/// `k`-th label of the sorted union; a padded vertex has no index on its side.
#[derive(Clone, Debug)]
pub struct AlignedPair<'g, T> {
    g1: &'g LabeledDigraph<T>,
    g2: &'g LabeledDigraph<T>,
    labels: Vec<String>,
    idx1: Vec<Option<usize>>,
    idx2: Vec<Option<usize>>,
}

impl<'g, T: Scalar> AlignedPair<'g, T> {
    pub fn new(g1: &'g LabeledDigraph<T>, g2: &'g LabeledDigraph<T>) -> Self {
        let labels: BTreeSet<&str> = g1
            .vertices()
            .iter()
            .chain(g2.vertices())
            .map(|v| v.label.as_str())
            .collect();
        let labels: Vec<String> = labels.into_iter().map(String::from).collect();
        let idx1 = labels.iter().map(|l| g1.index_of(l)).collect();
        let idx2 = labels.iter().map(|l| g2.index_of(l)).collect();
        AlignedPair {
            g1,
            g2,
            labels,
            idx1,
            idx2,
        }
    }

    /// `|V_12| = |V_21|`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn graph(&self, side: Side) -> &'g LabeledDigraph<T> {
        match side {
            Side::Left => self.g1,
            Side::Right => self.g2,
        }
    }

    /// Original vertex index behind aligned position `k`, if any.
    pub fn original(&self, side: Side, k: usize) -> Option<usize> {
        match side {
            Side::Left => self.idx1[k],
            Side::Right => self.idx2[k],
        }
    }

    /// Vertex weights over the aligned positions, zero on padding.
    pub fn mu(&self, side: Side) -> Vec<T> {
        let g = self.graph(side);
        (0..self.len())
            .map(|k| self.original(side, k).map_or_else(T::zero, |i| g.weight(i)))
            .collect()
    }

    /// Degree over the aligned positions, zero on padding.
    pub fn degree(&self, side: Side, k: usize) -> usize {
        self.original(side, k)
            .map_or(0, |i| self.graph(side).degree(i))
    }

    /// Geodesic proximity `1 - d/|V_ij|` between aligned positions; 0 when
    /// either position is padding. `dist` must belong to the graph on `side`.
    pub fn gep(&self, side: Side, dist: &RawDistances<T>, cap: Option<T>, k: usize, l: usize) -> T {
        match (self.original(side, k), self.original(side, l)) {
            (Some(i), Some(j)) => {
                let n = T::from_count(self.len());
                T::one() - dist.capped(i, j, cap, n) / n
            }
            _ => T::zero(),
        }
    }

    pub fn gep_row(&self, side: Side, dist: &RawDistances<T>, cap: Option<T>, k: usize) -> Vec<T> {
        (0..self.len())
            .map(|l| self.gep(side, dist, cap, k, l))
            .collect()
    }
}

/// Weighting of vertex pairs in the arc-related cosine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phi {
    /// Every pair counts equally.
    Uniform,
    /// Pairs weighted by the larger of the two raw degrees.
    MaxDegree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CosineParams<T> {
    pub weighted: bool,
    pub phi: Phi,
    /// Average the arc-related part with the vertex-weight cosine.
    pub vertex_part: bool,
    /// Distances above the cap count as `|V_ij|`; `None` means unbounded.
    pub cap: Option<T>,
    /// Restrict the arc-related average to these labels; `None` means all.
    pub labels: Option<BTreeSet<String>>,
}

impl<T> CosineParams<T> {
    pub fn new(weighted: bool, phi: Phi, vertex_part: bool) -> Self {
        CosineParams {
            weighted,
            phi,
            vertex_part,
            cap: None,
            labels: None,
        }
    }
}

/// Cosine of the label-aligned vertex weight vectors.
pub fn cos_v<T: Scalar>(pair: &AlignedPair<'_, T>) -> T {
    cosine(&pair.mu(Side::Left), &pair.mu(Side::Right))
}

/// Arc-related cosine from precomputed distances of both graphs.
pub fn cos_a_with<T: Scalar>(
    pair: &AlignedPair<'_, T>,
    d1: &RawDistances<T>,
    d2: &RawDistances<T>,
    params: &CosineParams<T>,
) -> T {
    let mut num = T::zero();
    let mut den = T::zero();
    let mut plain_num = T::zero();
    let mut plain_den = 0usize;
    for k in 0..pair.len() {
        if let Some(filter) = &params.labels {
            if !filter.contains(&pair.labels()[k]) {
                continue;
            }
        }
        let c = match (pair.original(Side::Left, k), pair.original(Side::Right, k)) {
            (Some(_), Some(_)) => cosine(
                &pair.gep_row(Side::Left, d1, params.cap, k),
                &pair.gep_row(Side::Right, d2, params.cap, k),
            ),
            _ => T::zero(),
        };
        let phi = match params.phi {
            Phi::Uniform => T::one(),
            Phi::MaxDegree => {
                T::from_count(pair.degree(Side::Left, k).max(pair.degree(Side::Right, k)))
            }
        };
        num = num + phi * c;
        den = den + phi;
        plain_num = plain_num + c;
        plain_den += 1;
    }
    if den > T::zero() {
        num / den
    } else if plain_den > 0 {
        // all weights zero: fall back to the plain mean
        plain_num / T::from_count(plain_den)
    } else {
        T::zero()
    }
}

pub fn cos_graph_with<T: Scalar>(
    pair: &AlignedPair<'_, T>,
    d1: &RawDistances<T>,
    d2: &RawDistances<T>,
    params: &CosineParams<T>,
) -> T {
    let a = cos_a_with(pair, d1, d2, params);
    if params.vertex_part {
        (cos_v(pair) + a) * T::lit(0.5)
    } else {
        a
    }
}

pub fn cos_graph<T: Scalar>(
    g1: &LabeledDigraph<T>,
    g2: &LabeledDigraph<T>,
    params: &CosineParams<T>,
) -> Result<T, GraphError> {
    let d1 = RawDistances::compute(g1, params.weighted)?;
    let d2 = RawDistances::compute(g2, params.weighted)?;
    Ok(cos_graph_with(&AlignedPair::new(g1, g2), &d1, &d2, params))
}
