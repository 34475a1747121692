// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{InductionError, TopicNetwork};
use crate::graph::DiArc;
use crate::scalar::Scalar;

/// How the two arcs of a reciprocal pair merge into one edge weight. A lone
/// arc keeps its weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UndirectedMode {
    #[default]
    Mean,
    Max,
    Sum,
}

impl UndirectedMode {
    fn merge<T: Scalar>(self, a: T, b: T) -> T {
        match self {
            UndirectedMode::Mean => (a + b) / T::lit(2.0),
            UndirectedMode::Max => a.max(b),
            UndirectedMode::Sum => a + b,
        }
    }
}

/// Undirected version of `t`: one edge per adjacent pair, stored as two
/// equal arcs.
pub fn to_undirected<T: Scalar>(
    t: &TopicNetwork<T>,
    mode: UndirectedMode,
) -> Result<TopicNetwork<T>, InductionError> {
    let g = t.graph();
    let mut arcs = Vec::with_capacity(2 * g.arc_count());
    for a in g.arcs() {
        let (u, v) = (a.source, a.target);
        if u > v && g.has_arc(v, u) {
            continue;
        }
        let w = match (u == v, g.arc_weight(v, u)) {
            (false, Some(back)) => mode.merge(a.weight, back),
            _ => a.weight,
        };
        arcs.push(DiArc {
            source: u,
            target: v,
            weight: w,
            kind: a.kind.clone(),
        });
        if u != v {
            arcs.push(DiArc {
                source: v,
                target: u,
                weight: w,
                kind: a.kind.clone(),
            });
        }
    }
    TopicNetwork::new(g.with_arcs(arcs)?, t.mode(), false, t.provenance().clone())
}

/// Margin arcs between equally labeled vertices of layers `from` and `to`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginLayer {
    pub from: usize,
    pub to: usize,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplexTopicNetwork<T> {
    layers: Vec<TopicNetwork<T>>,
    margins: Vec<MarginLayer>,
}

impl<T: Scalar> MultiplexTopicNetwork<T> {
    pub fn layers(&self) -> &[TopicNetwork<T>] {
        &self.layers
    }

    pub fn margins(&self) -> &[MarginLayer] {
        &self.margins
    }

    pub fn margin_arc_count(&self) -> usize {
        self.margins.iter().map(|m| m.pairs.len()).sum()
    }
}

/// Stacks topic networks and links label-equal vertices for every ordered
/// pair of layers. All layers must use the same topic level.
pub fn build_mtn<T: Scalar>(
    layers: Vec<TopicNetwork<T>>,
) -> Result<MultiplexTopicNetwork<T>, InductionError> {
    if let Some(first) = layers.first() {
        let level = first.provenance().level;
        if let Some(other) = layers.iter().find(|l| l.provenance().level != level) {
            return Err(InductionError::LevelMismatch(
                level,
                other.provenance().level,
            ));
        }
    }
    let mut margins = Vec::new();
    for (i, a) in layers.iter().enumerate() {
        for (j, b) in layers.iter().enumerate() {
            if i == j {
                continue;
            }
            let pairs = a
                .graph()
                .vertices()
                .iter()
                .enumerate()
                .filter_map(|(u, v)| b.graph().index_of(&v.label).map(|w| (u, w)))
                .collect();
            margins.push(MarginLayer {
                from: i,
                to: j,
                pairs,
            });
        }
    }
    Ok(MultiplexTopicNetwork { layers, margins })
}
