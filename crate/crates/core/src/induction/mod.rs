// SPDX-License-Identifier: Apache-2.0

//! Induction of topic networks from a linguistic multilayer network.
//!
//! [`induce_ttn`], [`induce_atn`] and [`induce_wtn`] are direct
//! implementations; [`induce_generic`] evaluates the same sums with
//! caller-supplied combinators and reproduces the direct paths exactly when
//! given [`TtnCombinators`], [`AtnCombinators`] or [`WtnCombinators`].

mod generic;
mod multiplex;
mod network;
mod weighting;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{Corpus, CorpusError, LinguisticMultilayerNetwork, ReferenceStats};
use crate::graph::GraphError;
use crate::scalar::Scalar;
use crate::topics::{
    top_m_filter, Classifier, TopicDistribution, TopicError, TopicScheme, DEFAULT_TOP_M,
};

pub use generic::{induce_generic, ArcEvidence, Combinators, Element, VertexEvidence};
pub use multiplex::{build_mtn, to_undirected, MarginLayer, MultiplexTopicNetwork, UndirectedMode};
pub use network::{NetworkMode, Provenance, TopicNetwork, TopicNetworkDocument};
pub use weighting::{
    induce_atn, induce_ttn, induce_wtn, AtnCombinators, TtnCombinators, WtnCombinators,
};

#[derive(Debug, Error)]
pub enum InductionError {
    #[error("text layer is empty")]
    EmptyTextLayer,
    #[error("the multilayer network has no {0} layer")]
    MissingLayer(&'static str),
    #[error("text `{text}` contributes to topic `{topic}` but has no active author")]
    UnauthoredText { text: String, topic: String },
    #[error("{got} topic distributions for {texts} texts")]
    DistributionCount { got: usize, texts: usize },
    #[error("topic `{code}` is at level {actual}, induction runs at level {wanted}")]
    WrongLevel {
        code: String,
        actual: u8,
        wanted: u8,
    },
    #[error("layers use different topic levels ({0} and {1})")]
    LevelMismatch(u8, u8),
    #[error("combinator {what} returned {value}")]
    CombinatorDomain { what: &'static str, value: f64 },
    #[error("topic network weight must be positive, found {0}")]
    NonPositiveWeight(f64),
    #[error("invalid induction config: {0}")]
    InvalidConfig(String),
    #[error("malformed topic network: {0}")]
    Malformed(String),
    #[error(transparent)]
    Topic(#[from] TopicError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InductionConfig {
    /// Number of highest membership values kept per text.
    pub top_m: usize,
    /// Penalty/reward factor for below/above-average author activity.
    pub p: f64,
    /// Scheme level the topic vertices live on.
    pub level: u8,
    pub reference: Option<ReferenceStats>,
}

impl Default for InductionConfig {
    fn default() -> Self {
        InductionConfig {
            top_m: DEFAULT_TOP_M,
            p: 2.0,
            level: 2,
            reference: None,
        }
    }
}

impl InductionConfig {
    pub fn validate(&self) -> Result<(), InductionError> {
        if self.top_m == 0 {
            return Err(InductionError::InvalidConfig(
                "top_m must be at least 1".into(),
            ));
        }
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(InductionError::InvalidConfig(format!(
                "p must exceed 1, got {}",
                self.p
            )));
        }
        if let Some(r) = &self.reference {
            r.validate()?;
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(
            serde_json::to_vec(self).expect("config serializes"),
        ))
    }

    pub(crate) fn reference_or_err(&self) -> Result<&ReferenceStats, InductionError> {
        self.reference.as_ref().ok_or_else(|| {
            InductionError::InvalidConfig("author weighting needs reference statistics".into())
        })
    }
}

/// Scheme, per-text topic memberships and the multilayer network they
/// annotate.
#[derive(Clone, Debug)]
pub struct DefinitionalSetting<'a, T: Scalar> {
    scheme: &'a TopicScheme,
    lmn: &'a LinguisticMultilayerNetwork<T>,
    level: u8,
    theta: Vec<TopicDistribution<T>>,
    name: String,
}

impl<'a, T: Scalar> DefinitionalSetting<'a, T> {
    /// `theta[x]` belongs to vertex `x` of the text layer.
    pub fn new(
        scheme: &'a TopicScheme,
        level: u8,
        lmn: &'a LinguisticMultilayerNetwork<T>,
        theta: Vec<TopicDistribution<T>>,
    ) -> Result<Self, InductionError> {
        let texts = lmn.text_layer().vertex_count();
        if theta.len() != texts {
            return Err(InductionError::DistributionCount {
                got: theta.len(),
                texts,
            });
        }
        if level == 0 || level > scheme.depth() {
            return Err(TopicError::BadLevel(level).into());
        }
        for d in &theta {
            for code in d.codes() {
                let node = scheme
                    .node(code)
                    .ok_or_else(|| TopicError::UnknownCode(code.to_string()))?;
                if node.level != level {
                    return Err(InductionError::WrongLevel {
                        code: code.to_string(),
                        actual: node.level,
                        wanted: level,
                    });
                }
            }
        }
        Ok(DefinitionalSetting {
            scheme,
            lmn,
            level,
            theta,
            name: String::new(),
        })
    }

    /// Runs `classifier` over every text of `corpus` (in parallel). A text
    /// whose classification fails contributes nothing.
    pub fn classify(
        scheme: &'a TopicScheme,
        level: u8,
        classifier: &dyn Classifier<T>,
        corpus: &Corpus,
        lmn: &'a LinguisticMultilayerNetwork<T>,
    ) -> Result<Self, InductionError> {
        let theta: Vec<TopicDistribution<T>> = corpus
            .texts()
            .par_iter()
            .map(|t| match classifier.classify(t.view()) {
                Ok(d) => d,
                Err(e) => {
                    log::warn!("text `{}` not classified: {e}", t.id);
                    TopicDistribution::new()
                }
            })
            .collect();
        let mut s = Self::new(scheme, level, lmn, theta)?;
        s.name = corpus.name().to_string();
        Ok(s)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scheme(&self) -> &TopicScheme {
        self.scheme
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn lmn(&self) -> &LinguisticMultilayerNetwork<T> {
        self.lmn
    }

    pub fn theta(&self) -> &[TopicDistribution<T>] {
        &self.theta
    }

    /// Per-text memberships after top-m selection against the corpus mean.
    pub fn beta1(&self, top_m: usize) -> Vec<TopicDistribution<T>> {
        let mean = crate::topics::global_mean(&self.theta);
        self.theta
            .iter()
            .map(|d| top_m_filter(d, top_m, mean))
            .collect()
    }

    pub(crate) fn provenance(&self, cfg: &InductionConfig) -> Provenance {
        Provenance {
            corpus: self.name.clone(),
            config_hash: cfg.hash(),
            level: self.level,
        }
    }
}
