// SPDX-License-Identifier: Apache-2.0

//! Vertex-labeled, vertex- and arc-weighted simple digraphs.
//!
//! [`LabeledDigraph`] is the substrate for every layer of a linguistic
//! multilayer network and for every topic network. It is immutable once
//! built; use [`GraphBuilder`] to assemble one.

mod features;
mod geodesic;
mod orbit;
mod rewire;
mod typed_cluster;
mod undirected;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

pub use features::{netsimile_features, NETSIMILE_DIM};
pub use geodesic::{geodesic_matrix, RawDistances};
pub use orbit::orbit;
pub use rewire::er_rewire;
pub use typed_cluster::{typed_cluster_vector, TOSI_DIM};
pub use undirected::SimpleGraph;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("invalid weight {weight} on {what}")]
    InvalidWeight { what: String, weight: f64 },
    #[error("weighted geodesics need positive arc weights, found {0}")]
    NonPositiveArcWeight(f64),
    #[error("no class code for vertex `{0}`")]
    MissingClass(String),
    #[error("malformed graph document: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<T> {
    pub label: String,
    pub weight: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiArc<T> {
    pub source: usize,
    pub target: usize,
    pub weight: T,
    pub kind: String,
}

/// Simple digraph with an injective vertex labeling. Self-loops are allowed,
/// parallel arcs are not.
#[derive(Clone, Debug)]
pub struct LabeledDigraph<T> {
    vertices: Vec<Vertex<T>>,
    // sorted by (source, target)
    arcs: Vec<DiArc<T>>,
    label_index: HashMap<String, usize>,
    arc_index: HashMap<(usize, usize), usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl<T: PartialEq> PartialEq for LabeledDigraph<T> {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arcs == other.arcs
    }
}

impl<T: Scalar> Default for LabeledDigraph<T> {
    fn default() -> Self {
        GraphBuilder::new().build()
    }
}

impl<T: Scalar> LabeledDigraph<T> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex<T>] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[DiArc<T>] {
        &self.arcs
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex<T>> {
        self.vertices.get(id)
    }

    pub fn label(&self, id: usize) -> &str {
        &self.vertices[id].label
    }

    pub fn weight(&self, id: usize) -> T {
        self.vertices[id].weight
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.label_index.contains_key(label)
    }

    pub fn arc(&self, source: usize, target: usize) -> Option<&DiArc<T>> {
        self.arc_index
            .get(&(source, target))
            .map(|&i| &self.arcs[i])
    }

    pub fn arc_weight(&self, source: usize, target: usize) -> Option<T> {
        self.arc(source, target).map(|a| a.weight)
    }

    pub fn has_arc(&self, source: usize, target: usize) -> bool {
        self.arc_index.contains_key(&(source, target))
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &DiArc<T>> + '_ {
        self.out_adj[v].iter().map(move |&i| &self.arcs[i])
    }

    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = &DiArc<T>> + '_ {
        self.in_adj[v].iter().map(move |&i| &self.arcs[i])
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arcs(v).map(|a| a.target)
    }

    /// In-degree plus out-degree; a self-loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    /// Largest arc weight, or `None` for an arc-free graph.
    pub fn max_arc_weight(&self) -> Option<T> {
        self.arcs.iter().map(|a| a.weight).reduce(T::max)
    }

    /// Arc set as ordered label pairs.
    pub fn labeled_arcs(&self) -> impl Iterator<Item = (&str, &str, T)> + '_ {
        self.arcs
            .iter()
            .map(|a| (self.label(a.source), self.label(a.target), a.weight))
    }

    /// Copy of this graph with the same vertices and a new arc list.
    pub fn with_arcs(&self, arcs: Vec<DiArc<T>>) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::with_capacity(self.vertices.len());
        for v in &self.vertices {
            b.add_vertex(v.label.clone(), v.weight)?;
        }
        for a in arcs {
            b.add_arc(a.source, a.target, a.weight, a.kind)?;
        }
        Ok(b.build())
    }

    /// Subgraph induced by `keep` (vertex ids, any order). Vertex order of
    /// the result follows the original ids.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Self, GraphError> {
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut b = GraphBuilder::with_capacity(sorted.len());
        for &v in &sorted {
            let vx = self.vertex(v).ok_or(GraphError::UnknownVertex(v))?;
            remap[v] = b.add_vertex(vx.label.clone(), vx.weight)?;
        }
        for a in &self.arcs {
            let (s, t) = (remap[a.source], remap[a.target]);
            if s != usize::MAX && t != usize::MAX {
                b.add_arc(s, t, a.weight, a.kind.clone())?;
            }
        }
        Ok(b.build())
    }

    pub fn to_document(&self) -> GraphDocument<T> {
        GraphDocument {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexRecord {
                    id: id as u64,
                    label: v.label.clone(),
                    weight: v.weight,
                })
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcRecord {
                    src: a.source as u64,
                    dst: a.target as u64,
                    weight: a.weight,
                    kind: a.kind.clone(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument<T>) -> Result<Self, GraphError> {
        let mut ids = HashMap::with_capacity(doc.vertices.len());
        let mut b = GraphBuilder::with_capacity(doc.vertices.len());
        for v in &doc.vertices {
            let idx = b.add_vertex(v.label.clone(), v.weight)?;
            if ids.insert(v.id, idx).is_some() {
                return Err(GraphError::Malformed(format!(
                    "duplicate vertex id {}",
                    v.id
                )));
            }
        }
        for a in &doc.arcs {
            let s = *ids.get(&a.src).ok_or_else(|| {
                GraphError::Malformed(format!("arc source {} not a vertex", a.src))
            })?;
            let t = *ids.get(&a.dst).ok_or_else(|| {
                GraphError::Malformed(format!("arc target {} not a vertex", a.dst))
            })?;
            b.add_arc(s, t, a.weight, a.kind.clone())?;
        }
        Ok(b.build())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let doc: GraphDocument<T> =
            serde_json::from_str(s).map_err(|e| GraphError::Malformed(e.to_string()))?;
        Self::from_document(&doc)
    }

    /// Graphviz rendering. Vertex ids are positional.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {i} [label=\"{}\", weight=\"{}\"];",
                escape(&v.label),
                v.weight
            );
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  {} -> {} [weight=\"{}\", kind=\"{}\"];",
                a.source,
                a.target,
                a.weight,
                escape(&a.kind)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument<T> {
    pub vertices: Vec<VertexRecord<T>>,
    pub arcs: Vec<ArcRecord<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord<T> {
    pub id: u64,
    pub label: String,
    pub weight: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcRecord<T> {
    pub src: u64,
    pub dst: u64,
    pub weight: T,
    #[serde(default)]
    pub kind: String,
}

/// Incremental constructor for [`LabeledDigraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder<T> {
    vertices: Vec<Vertex<T>>,
    label_index: HashMap<String, usize>,
    arcs: BTreeMap<(usize, usize), (T, String)>,
}

impl<T: Scalar> Default for GraphBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> GraphBuilder<T> {
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    pub fn with_capacity(n: usize) -> Self {
        GraphBuilder {
            vertices: Vec::with_capacity(n),
            label_index: HashMap::with_capacity(n),
            arcs: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, weight: T) -> Result<usize, GraphError> {
        let label = label.into();
        check_weight(&label, weight)?;
        if self.label_index.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        let id = self.vertices.len();
        self.label_index.insert(label.clone(), id);
        self.vertices.push(Vertex { label, weight });
        Ok(id)
    }

    pub fn add_arc(
        &mut self,
        source: usize,
        target: usize,
        weight: T,
        kind: impl Into<String>,
    ) -> Result<(), GraphError> {
        let n = self.vertices.len();
        if source >= n {
            return Err(GraphError::UnknownVertex(source));
        }
        if target >= n {
            return Err(GraphError::UnknownVertex(target));
        }
        check_weight(&format!("arc {source} -> {target}"), weight)?;
        if self
            .arcs
            .insert((source, target), (weight, kind.into()))
            .is_some()
        {
            return Err(GraphError::DuplicateArc(source, target));
        }
        Ok(())
    }

    pub fn add_arc_by_label(
        &mut self,
        source: &str,
        target: &str,
        weight: T,
        kind: impl Into<String>,
    ) -> Result<(), GraphError> {
        let s = self
            .index_of(source)
            .ok_or_else(|| GraphError::UnknownLabel(source.to_string()))?;
        let t = self
            .index_of(target)
            .ok_or_else(|| GraphError::UnknownLabel(target.to_string()))?;
        self.add_arc(s, t, weight, kind)
    }

    pub fn build(self) -> LabeledDigraph<T> {
        let n = self.vertices.len();
        let mut arcs = Vec::with_capacity(self.arcs.len());
        let mut arc_index = HashMap::with_capacity(self.arcs.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for ((s, t), (weight, kind)) in self.arcs {
            let i = arcs.len();
            arc_index.insert((s, t), i);
            out_adj[s].push(i);
            in_adj[t].push(i);
            arcs.push(DiArc {
                source: s,
                target: t,
                weight,
                kind,
            });
        }
        LabeledDigraph {
            vertices: self.vertices,
            arcs,
            label_index: self.label_index,
            arc_index,
            out_adj,
            in_adj,
        }
    }
}

fn check_weight<T: Scalar>(what: &str, w: T) -> Result<(), GraphError> {
    if w.is_finite() && w >= T::zero() {
        Ok(())
    } else {
        Err(GraphError::InvalidWeight {
            what: what.to_string(),
            weight: w.as_f64(),
        })
    }
}
