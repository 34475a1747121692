// SPDX-License-Identifier: Apache-2.0

//! Corpus and edit-history ingestion, and the linguistic multilayer network
//! built from them.

mod lmn;
mod stats;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphError;
use crate::scalar::Scalar;
use crate::topics::{PrecomputedClassifier, TextView, TopicDistribution, TopicError};

pub use lmn::{GeneratingLayer, LayerKind, LinguisticMultilayerNetwork, COAUTHORSHIP, HYPERLINK};
pub use stats::{ReferenceStats, DEFAULT_MEAN_COAUTHORSHIP};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("malformed corpus: {0}")]
    Malformed(String),
    #[error("duplicate text id `{0}`")]
    DuplicateText(String),
    #[error("revision refers to unknown text `{0}`")]
    UnknownText(String),
    #[error("revision of `{text}` by `{author}` adds {bytes} bytes")]
    InvalidBytes {
        text: String,
        author: String,
        bytes: f64,
    },
    #[error("edit history is empty")]
    EmptyHistory,
    #[error("corpus has no texts")]
    EmptyCorpus,
    #[error("margin of layer {layer} does not match the text layer: {msg}")]
    BadMargin { layer: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Topic(#[from] TopicError),
}

/// On-disk shape of a text.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TextRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub tokens: Vec<String>,
    #[serde(default)]
    pub links: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, serde_json::Value>,
    /// Optional precomputed topic memberships.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topics: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Revision {
    pub text: String,
    pub author: String,
    pub bytes_added: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusDocument {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub texts: Vec<TextRecord>,
    #[serde(default)]
    pub revisions: Vec<Revision>,
}

/// A validated text: links are resolved to indices into the corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct Text {
    pub id: String,
    pub title: String,
    pub tokens: Vec<String>,
    pub links: Vec<usize>,
    pub meta: BTreeMap<String, serde_json::Value>,
    pub topics: Option<BTreeMap<String, f64>>,
}

impl Text {
    pub fn view(&self) -> TextView<'_> {
        TextView {
            id: &self.id,
            title: &self.title,
            tokens: &self.tokens,
        }
    }
}

/// Texts sorted by id plus their edit history.
#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    name: String,
    texts: Vec<Text>,
    index: HashMap<String, usize>,
    history: EditHistory,
    dropped_links: usize,
}

impl Corpus {
    pub fn from_json(s: &str) -> Result<Self, CorpusError> {
        let doc: CorpusDocument =
            serde_json::from_str(s).map_err(|e| CorpusError::Malformed(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: CorpusDocument) -> Result<Self, CorpusError> {
        let mut records = doc.texts;
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if index.insert(r.id.clone(), i).is_some() {
                return Err(CorpusError::DuplicateText(r.id.clone()));
            }
        }
        let mut dropped_links = 0;
        let texts = records
            .into_iter()
            .map(|r| {
                let mut links = BTreeSet::new();
                for l in &r.links {
                    match index.get(l) {
                        Some(&j) => {
                            links.insert(j);
                        }
                        None => dropped_links += 1,
                    }
                }
                Text {
                    id: r.id,
                    title: r.title,
                    tokens: r.tokens,
                    links: links.into_iter().collect(),
                    meta: r.meta,
                    topics: r.topics,
                }
            })
            .collect();
        for rev in &doc.revisions {
            if !index.contains_key(&rev.text) {
                return Err(CorpusError::UnknownText(rev.text.clone()));
            }
            if !rev.bytes_added.is_finite() || rev.bytes_added < 0.0 {
                return Err(CorpusError::InvalidBytes {
                    text: rev.text.clone(),
                    author: rev.author.clone(),
                    bytes: rev.bytes_added,
                });
            }
        }
        if dropped_links > 0 {
            log::info!("dropped {dropped_links} dangling links");
        }
        Ok(Corpus {
            name: doc.name,
            texts,
            index,
            history: EditHistory {
                revisions: doc.revisions,
            },
            dropped_links,
        })
    }

    pub fn to_document(&self) -> CorpusDocument {
        CorpusDocument {
            name: self.name.clone(),
            texts: self
                .texts
                .iter()
                .map(|t| TextRecord {
                    id: t.id.clone(),
                    title: t.title.clone(),
                    tokens: t.tokens.clone(),
                    links: t.links.iter().map(|&j| self.texts[j].id.clone()).collect(),
                    meta: t.meta.clone(),
                    topics: t.topics.clone(),
                })
                .collect(),
            revisions: self.history.revisions.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("corpus serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn texts(&self) -> &[Text] {
        &self.texts
    }

    pub fn len(&self) -> usize {
        self.texts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.texts.is_empty()
    }

    pub fn text(&self, id: &str) -> Option<&Text> {
        self.index.get(id).map(|&i| &self.texts[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn history(&self) -> &EditHistory {
        &self.history
    }

    pub fn dropped_links(&self) -> usize {
        self.dropped_links
    }

    pub fn link_count(&self) -> usize {
        self.texts.iter().map(|t| t.links.len()).sum()
    }

    /// Classifier over the `topics` fields, if any text carries one.
    pub fn precomputed_topics<T: Scalar>(
        &self,
    ) -> Result<Option<PrecomputedClassifier<T>>, CorpusError> {
        if self.texts.iter().all(|t| t.topics.is_none()) {
            return Ok(None);
        }
        let mut table = HashMap::with_capacity(self.texts.len());
        for t in &self.texts {
            let d = match &t.topics {
                Some(m) => {
                    TopicDistribution::from_pairs(m.iter().map(|(c, &v)| (c.clone(), T::lit(v))))?
                }
                None => TopicDistribution::new(),
            };
            table.insert(t.id.clone(), d);
        }
        Ok(Some(PrecomputedClassifier::new(table)))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EditHistory {
    revisions: Vec<Revision>,
}

impl EditHistory {
    pub fn revisions(&self) -> &[Revision] {
        &self.revisions
    }

    pub fn is_empty(&self) -> bool {
        self.revisions.is_empty()
    }

    /// Bytes added to `text` by `author` over all revisions.
    pub fn activity(&self, author: &str, text: &str) -> f64 {
        self.revisions
            .iter()
            .filter(|r| r.author == author && r.text == text)
            .map(|r| r.bytes_added)
            .sum()
    }

    /// All activities keyed by (text, author).
    pub fn activity_table(&self) -> BTreeMap<(&str, &str), f64> {
        let mut out = BTreeMap::new();
        for r in &self.revisions {
            *out.entry((r.text.as_str(), r.author.as_str()))
                .or_insert(0.0) += r.bytes_added;
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn text(id: &str, tokens: &[&str], links: &[&str]) -> TextRecord {
        TextRecord {
            id: id.into(),
            title: id.to_uppercase(),
            tokens: tokens.iter().map(|s| s.to_string()).collect(),
            links: links.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn rev(text: &str, author: &str, bytes: f64) -> Revision {
        Revision {
            text: text.into(),
            author: author.into(),
            bytes_added: bytes,
        }
    }

    /// Four texts, two links, two pairs of co-authors.
    pub fn toy() -> Corpus {
        Corpus::from_document(CorpusDocument {
            name: "toy".into(),
            texts: vec![
                text("x1", &["w1", "w2", "w3"], &["x2"]),
                text("x2", &["w1", "w2", "w4"], &[]),
                text("x3", &["w5", "w6", "w7"], &["x4"]),
                text("x4", &["w4", "w8", "w9"], &[]),
            ],
            revisions: vec![
                rev("x1", "a1", 1.0),
                rev("x1", "a2", 1.0),
                rev("x2", "a1", 1.0),
                rev("x2", "a2", 1.0),
                rev("x3", "a3", 1.0),
                rev("x3", "a4", 1.0),
                rev("x4", "a3", 1.0),
                rev("x4", "a4", 1.0),
            ],
        })
        .unwrap()
    }
}
