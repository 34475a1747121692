// SPDX-License-Identifier: Apache-2.0

//! Pairwise similarity of topic networks.
//!
//! Eleven measures are registered in [`MeasureId::ALL`]; the registry order
//! is part of the public interface (feature matrices and reports use it).

mod cosine;
mod overlap;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    netsimile_features, typed_cluster_vector, GraphError, LabeledDigraph, RawDistances,
};
use crate::induction::TopicNetwork;
use crate::learning::{FeatureMatrix, LearningError};
use crate::scalar::{cosine as vector_cosine, Scalar};
use crate::topics::TopicScheme;

pub use cosine::{
    cos_a_with, cos_graph, cos_graph_with, cos_v, AlignedPair, CosineParams, Phi, Side,
};
pub use overlap::{ged, ges, veo, wal, wges, Overlap};

#[derive(Debug, Error)]
pub enum SimilarityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Learning(#[from] LearningError),
    #[error("a similarity matrix needs at least two networks, got {0}")]
    TooFewNetworks(usize),
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MeasureId {
    #[serde(rename = "ges")]
    Ges,
    #[serde(rename = "wal")]
    Wal,
    #[serde(rename = "veo")]
    Veo,
    #[serde(rename = "wges")]
    Wges,
    #[serde(rename = "cosA_w")]
    CosAW,
    #[serde(rename = "cosAV_w_phi1")]
    CosAVWPhi1,
    #[serde(rename = "cosAV_w_phi2")]
    CosAVWPhi2,
    #[serde(rename = "cosA_uw")]
    CosAUw,
    #[serde(rename = "cosAV_uw")]
    CosAVUw,
    #[serde(rename = "netsimile")]
    NetSimile,
    #[serde(rename = "tosi")]
    ToSi,
}

impl MeasureId {
    pub const ALL: [MeasureId; 11] = [
        MeasureId::Ges,
        MeasureId::Wal,
        MeasureId::Veo,
        MeasureId::Wges,
        MeasureId::CosAW,
        MeasureId::CosAVWPhi1,
        MeasureId::CosAVWPhi2,
        MeasureId::CosAUw,
        MeasureId::CosAVUw,
        MeasureId::NetSimile,
        MeasureId::ToSi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureId::Ges => "ges",
            MeasureId::Wal => "wal",
            MeasureId::Veo => "veo",
            MeasureId::Wges => "wges",
            MeasureId::CosAW => "cosA_w",
            MeasureId::CosAVWPhi1 => "cosAV_w_phi1",
            MeasureId::CosAVWPhi2 => "cosAV_w_phi2",
            MeasureId::CosAUw => "cosA_uw",
            MeasureId::CosAVUw => "cosAV_uw",
            MeasureId::NetSimile => "netsimile",
            MeasureId::ToSi => "tosi",
        }
    }

    /// 1-based position in the registry.
    pub fn number(self) -> usize {
        Self::ALL.iter().position(|m| *m == self).unwrap() + 1
    }

    /// NetSimile is a distance; all other measures are similarities.
    pub fn is_distance(self) -> bool {
        self == MeasureId::NetSimile
    }

    /// Value of `m(G, G)`.
    pub fn self_value(self) -> f64 {
        if self.is_distance() {
            0.0
        } else {
            1.0
        }
    }

    /// Codomain bounds.
    pub fn range(self) -> (f64, f64) {
        match self {
            MeasureId::NetSimile => (0.0, crate::graph::NETSIMILE_DIM as f64),
            MeasureId::ToSi => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }

    /// Cosine parameters for measures 5 to 9.
    pub fn cosine_params<T>(self) -> Option<CosineParams<T>> {
        let (w, phi, vp) = match self {
            MeasureId::CosAW => (true, Phi::Uniform, false),
            MeasureId::CosAVWPhi1 => (true, Phi::Uniform, true),
            MeasureId::CosAVWPhi2 => (true, Phi::MaxDegree, true),
            MeasureId::CosAUw => (false, Phi::Uniform, false),
            MeasureId::CosAVUw => (false, Phi::Uniform, true),
            _ => return None,
        };
        Some(CosineParams::new(w, phi, vp))
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = SimilarityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| SimilarityError::UnknownMeasure(s.to_string()))
    }
}

/// Canberra distance; terms with a zero denominator contribute 0.
pub fn canberra<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let den = x.abs() + y.abs();
            if den > T::zero() {
                (x - y).abs() / den
            } else {
                T::zero()
            }
        })
        .sum()
}

pub fn netsimile_distance<T: Scalar>(g1: &LabeledDigraph<T>, g2: &LabeledDigraph<T>) -> T {
    canberra(&netsimile_features(g1), &netsimile_features(g2))
}

/// How vertices are typed for ToSi.
#[derive(Clone, Copy, Debug)]
pub enum TopicClasses<'a> {
    /// Every vertex is its own class.
    Identity,
    /// Class = ancestor at `level` in the scheme; vertices above that
    /// level (or unknown to the scheme) keep their own code.
    Scheme { scheme: &'a TopicScheme, level: u8 },
}

impl TopicClasses<'_> {
    pub fn class_of(&self, code: &str) -> String {
        match self {
            TopicClasses::Identity => code.to_string(),
            TopicClasses::Scheme { scheme, level } => scheme
                .ancestor_at(code, *level)
                .map(str::to_string)
                .unwrap_or_else(|_| code.to_string()),
        }
    }
}

pub fn tosi_vector<T: Scalar>(
    g: &LabeledDigraph<T>,
    classes: TopicClasses<'_>,
) -> Result<Vec<T>, GraphError> {
    typed_cluster_vector(g, |_, label| Some(classes.class_of(label)))
}

pub fn tosi<T: Scalar>(
    g1: &LabeledDigraph<T>,
    g2: &LabeledDigraph<T>,
    classes: TopicClasses<'_>,
) -> Result<T, GraphError> {
    Ok(vector_cosine(
        &tosi_vector(g1, classes)?,
        &tosi_vector(g2, classes)?,
    ))
}

/// Settings shared by all measures of one comparison run.
#[derive(Clone, Copy, Debug)]
pub struct MeasureContext<'a> {
    pub classes: TopicClasses<'a>,
    /// Geodesic cap for the cosine measures; `None` is unbounded.
    pub cap: Option<f64>,
}

impl Default for MeasureContext<'_> {
    fn default() -> Self {
        MeasureContext {
            classes: TopicClasses::Identity,
            cap: None,
        }
    }
}

impl<'a> MeasureContext<'a> {
    /// ToSi classes one level above the network's topic level (level 1 at least).
    pub fn for_scheme(scheme: &'a TopicScheme, network_level: u8) -> Self {
        MeasureContext {
            classes: TopicClasses::Scheme {
                scheme,
                level: network_level.saturating_sub(1).max(1),
            },
            cap: None,
        }
    }
}

/// Per-network data reused across all pairs of a matrix.
struct Prepared<T> {
    distances: Option<RawDistances<T>>,
    features: Option<Vec<T>>,
}

fn prepare<T: Scalar>(
    g: &LabeledDigraph<T>,
    m: MeasureId,
    ctx: &MeasureContext<'_>,
) -> Result<Prepared<T>, GraphError> {
    let distances = match m.cosine_params::<T>() {
        Some(p) => Some(RawDistances::compute(g, p.weighted)?),
        None => None,
    };
    let features = match m {
        MeasureId::NetSimile => Some(netsimile_features(g)),
        MeasureId::ToSi => Some(tosi_vector(g, ctx.classes)?),
        _ => None,
    };
    Ok(Prepared {
        distances,
        features,
    })
}

fn evaluate_prepared<T: Scalar>(
    m: MeasureId,
    g1: &LabeledDigraph<T>,
    p1: &Prepared<T>,
    g2: &LabeledDigraph<T>,
    p2: &Prepared<T>,
    ctx: &MeasureContext<'_>,
) -> T {
    match m {
        MeasureId::Ges => ges(g1, g2),
        MeasureId::Wal => wal(g1, g2),
        MeasureId::Veo => veo(g1, g2),
        MeasureId::Wges => wges(g1, g2),
        MeasureId::NetSimile => {
            canberra(p1.features.as_ref().unwrap(), p2.features.as_ref().unwrap())
        }
        MeasureId::ToSi => {
            vector_cosine(p1.features.as_ref().unwrap(), p2.features.as_ref().unwrap())
        }
        _ => {
            let mut params = m.cosine_params::<T>().expect("cosine measure");
            params.cap = ctx.cap.map(T::lit);
            cos_graph_with(
                &AlignedPair::new(g1, g2),
                p1.distances.as_ref().unwrap(),
                p2.distances.as_ref().unwrap(),
                &params,
            )
        }
    }
}

/// Measure `m` on a pair of graphs.
pub fn measure<T: Scalar>(
    m: MeasureId,
    g1: &LabeledDigraph<T>,
    g2: &LabeledDigraph<T>,
    ctx: &MeasureContext<'_>,
) -> Result<T, SimilarityError> {
    let p1 = prepare(g1, m, ctx)?;
    let p2 = prepare(g2, m, ctx)?;
    Ok(evaluate_prepared(m, g1, &p1, g2, &p2, ctx))
}

/// Symmetric `n × n` matrix of `m` over the given graphs. Only the upper
/// triangle is computed; the diagonal holds `m(G, G)`.
pub fn similarity_matrix_graphs<T: Scalar>(
    ids: &[String],
    graphs: &[&LabeledDigraph<T>],
    m: MeasureId,
    ctx: &MeasureContext<'_>,
) -> Result<FeatureMatrix<T>, SimilarityError> {
    let n = graphs.len();
    if n < 2 {
        return Err(SimilarityError::TooFewNetworks(n));
    }
    let prepared: Vec<Prepared<T>> = graphs
        .par_iter()
        .map(|g| prepare(g, m, ctx))
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<T> = pairs
        .par_iter()
        .map(|&(i, j)| evaluate_prepared(m, graphs[i], &prepared[i], graphs[j], &prepared[j], ctx))
        .collect();
    let mut rows = vec![vec![T::zero(); n]; n];
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        rows[i][j] = v;
        rows[j][i] = v;
    }
    Ok(FeatureMatrix::square(ids.to_vec(), rows)?.with_measure(m.as_str()))
}

/// Similarity matrix of topic networks; row ids are the provenance corpus names.
pub fn similarity_matrix<T: Scalar>(
    nets: &[TopicNetwork<T>],
    m: MeasureId,
    ctx: &MeasureContext<'_>,
) -> Result<FeatureMatrix<T>, SimilarityError> {
    let ids: Vec<String> = nets.iter().map(|t| t.provenance().corpus.clone()).collect();
    let graphs: Vec<&LabeledDigraph<T>> = nets.iter().map(|t| t.graph()).collect();
    similarity_matrix_graphs(&ids, &graphs, m, ctx)
}
