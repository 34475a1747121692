// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::InductionError;
use crate::graph::{ArcRecord, GraphDocument, LabeledDigraph, VertexRecord};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkMode {
    Ttn,
    Atn,
    Wtn,
    Generic,
}

impl NetworkMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NetworkMode::Ttn => "ttn",
            NetworkMode::Atn => "atn",
            NetworkMode::Wtn => "wtn",
            NetworkMode::Generic => "generic",
        }
    }
}

impl std::str::FromStr for NetworkMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ttn" => Ok(NetworkMode::Ttn),
            "atn" => Ok(NetworkMode::Atn),
            "wtn" => Ok(NetworkMode::Wtn),
            "generic" => Ok(NetworkMode::Generic),
            other => Err(format!("unknown network mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub corpus: String,
    pub config_hash: String,
    pub level: u8,
}

/// Topic-labeled graph with strictly positive vertex and arc weights.
/// Undirected networks store every edge as a pair of equal arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct TopicNetwork<T> {
    graph: LabeledDigraph<T>,
    mode: NetworkMode,
    directed: bool,
    provenance: Provenance,
}

impl<T: Scalar> TopicNetwork<T> {
    pub fn new(
        graph: LabeledDigraph<T>,
        mode: NetworkMode,
        directed: bool,
        provenance: Provenance,
    ) -> Result<Self, InductionError> {
        for w in graph
            .vertices()
            .iter()
            .map(|v| v.weight)
            .chain(graph.arcs().iter().map(|a| a.weight))
        {
            if !(w > T::zero()) {
                return Err(InductionError::NonPositiveWeight(w.as_f64()));
            }
        }
        if !directed {
            for a in graph.arcs() {
                if graph.arc_weight(a.target, a.source) != Some(a.weight) {
                    return Err(InductionError::Malformed(format!(
                        "undirected network with unmatched arc {} -> {}",
                        graph.label(a.source),
                        graph.label(a.target)
                    )));
                }
            }
        }
        Ok(TopicNetwork {
            graph,
            mode,
            directed,
            provenance,
        })
    }

    pub fn graph(&self) -> &LabeledDigraph<T> {
        &self.graph
    }

    pub fn mode(&self) -> NetworkMode {
        self.mode
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn vertex_weight(&self, code: &str) -> Option<T> {
        self.graph.index_of(code).map(|i| self.graph.weight(i))
    }

    pub fn arc_weight(&self, from: &str, to: &str) -> Option<T> {
        let (s, t) = (self.graph.index_of(from)?, self.graph.index_of(to)?);
        self.graph.arc_weight(s, t)
    }

    pub fn to_document(&self) -> TopicNetworkDocument<T> {
        let g = self.graph.to_document();
        TopicNetworkDocument {
            mode: self.mode,
            directed: self.directed,
            provenance: self.provenance.clone(),
            vertices: g.vertices,
            arcs: g.arcs,
        }
    }

    pub fn from_document(doc: TopicNetworkDocument<T>) -> Result<Self, InductionError> {
        let graph = LabeledDigraph::from_document(&GraphDocument {
            vertices: doc.vertices,
            arcs: doc.arcs,
        })?;
        Self::new(graph, doc.mode, doc.directed, doc.provenance)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("network serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, InductionError> {
        let doc: TopicNetworkDocument<T> =
            serde_json::from_str(s).map_err(|e| InductionError::Malformed(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(&format!(
            "{}-{}",
            self.provenance.corpus,
            self.mode.as_str()
        ))
    }
}

/// Graph JSON plus `mode`, `directed` and `provenance` header fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopicNetworkDocument<T> {
    pub mode: NetworkMode,
    #[serde(default = "yes")]
    pub directed: bool,
    #[serde(default)]
    pub provenance: Provenance,
    pub vertices: Vec<VertexRecord<T>>,
    pub arcs: Vec<ArcRecord<T>>,
}

fn yes() -> bool {
    true
}
