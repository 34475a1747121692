// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use super::{Corpus, CorpusError};
use crate::graph::{GraphBuilder, LabeledDigraph};
use crate::scalar::Scalar;

pub const HYPERLINK: &str = "hyperlink";
pub const COAUTHORSHIP: &str = "coauthorship";
pub const LEXICAL_IDENTITY: &str = "lexical-identity";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerKind {
    Author,
    Lexicon,
    Other(String),
}

/// A layer feeding evidence into topic induction, together with its margin
/// links to the text layer.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingLayer<T> {
    pub kind: LayerKind,
    pub graph: LabeledDigraph<T>,
    /// `margins[x]` lists `(element, weight)` for every element of this layer
    /// linked to text `x`, sorted by element index.
    pub margins: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> GeneratingLayer<T> {
    pub fn margin(&self, text: usize, element: usize) -> T {
        self.margins[text]
            .binary_search_by_key(&element, |&(e, _)| e)
            .map(|i| self.margins[text][i].1)
            .unwrap_or_else(|_| T::zero())
    }

    /// Sum of the margin weights attached to text `x`.
    pub fn margin_total(&self, text: usize) -> T {
        self.margins[text].iter().map(|&(_, w)| w).sum()
    }
}

/// Text layer plus generating layers (authors, lexicon, ...).
#[derive(Clone, Debug, PartialEq)]
pub struct LinguisticMultilayerNetwork<T> {
    text_layer: LabeledDigraph<T>,
    layers: Vec<GeneratingLayer<T>>,
}

impl<T: Scalar> LinguisticMultilayerNetwork<T> {
    /// Assembles a network from hand-built parts.
    pub fn new(
        text_layer: LabeledDigraph<T>,
        layers: Vec<GeneratingLayer<T>>,
    ) -> Result<Self, CorpusError> {
        let n = text_layer.vertex_count();
        for (li, layer) in layers.iter().enumerate() {
            if layer.margins.len() != n {
                return Err(CorpusError::BadMargin {
                    layer: li,
                    msg: format!("{} margin rows for {n} texts", layer.margins.len()),
                });
            }
            for row in &layer.margins {
                if !row.windows(2).all(|w| w[0].0 < w[1].0) {
                    return Err(CorpusError::BadMargin {
                        layer: li,
                        msg: "margin rows must be sorted and duplicate-free".into(),
                    });
                }
                for &(e, w) in row {
                    if e >= layer.graph.vertex_count() {
                        return Err(CorpusError::BadMargin {
                            layer: li,
                            msg: format!("element {e} out of range"),
                        });
                    }
                    if !(w.is_finite() && w >= T::zero()) {
                        return Err(CorpusError::BadMargin {
                            layer: li,
                            msg: format!("invalid weight {w}"),
                        });
                    }
                }
            }
        }
        Ok(LinguisticMultilayerNetwork { text_layer, layers })
    }

    /// Text layer, author layer (if the corpus has an edit history) and
    /// lexicon layer.
    pub fn from_corpus(c: &Corpus) -> Result<Self, CorpusError> {
        let mut layers = Vec::with_capacity(2);
        if !c.history().is_empty() {
            layers.push(build_author_layer(c)?);
        }
        layers.push(build_lexicon_layer(c)?);
        Self::new(build_text_layer(c)?, layers)
    }

    pub fn text_layer(&self) -> &LabeledDigraph<T> {
        &self.text_layer
    }

    pub fn layers(&self) -> &[GeneratingLayer<T>] {
        &self.layers
    }

    pub fn layer(&self, kind: &LayerKind) -> Option<&GeneratingLayer<T>> {
        self.layers.iter().find(|l| &l.kind == kind)
    }

    pub fn author_layer(&self) -> Option<&GeneratingLayer<T>> {
        self.layer(&LayerKind::Author)
    }

    pub fn lexicon_layer(&self) -> Option<&GeneratingLayer<T>> {
        self.layer(&LayerKind::Lexicon)
    }
}

/// One vertex per text (weight 1), one unit-weight arc per hyperlink.
pub fn build_text_layer<T: Scalar>(c: &Corpus) -> Result<LabeledDigraph<T>, CorpusError> {
    let mut b = GraphBuilder::with_capacity(c.len());
    for t in c.texts() {
        b.add_vertex(t.id.clone(), T::one())?;
    }
    for (i, t) in c.texts().iter().enumerate() {
        for &j in &t.links {
            b.add_arc(i, j, T::one(), HYPERLINK)?;
        }
    }
    Ok(b.build())
}

/// Authors weighted by total activity, linked (loops included) whenever
/// they are both active on some text. The co-authorship weight sums
/// `2 min(act_r, act_s) / total activity` over shared texts.
pub fn build_author_layer<T: Scalar>(c: &Corpus) -> Result<GeneratingLayer<T>, CorpusError> {
    let table = c.history().activity_table();
    let authors: BTreeSet<&str> = table.keys().map(|&(_, a)| a).collect();
    let author_idx: BTreeMap<&str, usize> =
        authors.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let mut margins: Vec<Vec<(usize, T)>> = vec![Vec::new(); c.len()];
    let mut strength = vec![T::zero(); authors.len()];
    for (&(text, author), &act) in &table {
        let r = author_idx[author];
        let act = T::lit(act);
        strength[r] = strength[r] + act;
        if act > T::zero() {
            margins[c.index_of(text).expect("validated revision")].push((r, act));
        }
    }
    for row in &mut margins {
        row.sort_by_key(|&(r, _)| r);
    }

    let mut nu: BTreeMap<(usize, usize), T> = BTreeMap::new();
    for row in &margins {
        let total: T = row.iter().map(|&(_, a)| a).sum();
        for &(r, ar) in row {
            for &(s, as_) in row {
                let e = nu.entry((r, s)).or_insert_with(T::zero);
                *e = *e + T::lit(2.0) * ar.min(as_) / total;
            }
        }
    }

    let mut b = GraphBuilder::with_capacity(authors.len());
    for (&a, &s) in authors.iter().zip(&strength) {
        b.add_vertex(a, s)?;
    }
    for ((r, s), w) in nu {
        b.add_arc(r, s, w, COAUTHORSHIP)?;
    }
    Ok(GeneratingLayer {
        kind: LayerKind::Author,
        graph: b.build(),
        margins,
    })
}

/// Token types, each related only to itself, linked to every text using
/// them with weight 1.
pub fn build_lexicon_layer<T: Scalar>(c: &Corpus) -> Result<GeneratingLayer<T>, CorpusError> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for t in c.texts() {
        for tok in &t.tokens {
            *counts.entry(tok.as_str()).or_insert(0) += 1;
        }
    }
    let idx: BTreeMap<&str, usize> = counts.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut b = GraphBuilder::with_capacity(counts.len());
    for (i, (&tok, &n)) in counts.iter().enumerate() {
        b.add_vertex(tok, T::from_count(n))?;
        b.add_arc(i, i, T::one(), LEXICAL_IDENTITY)?;
    }
    let margins = c
        .texts()
        .iter()
        .map(|t| {
            let types: BTreeSet<usize> = t.tokens.iter().map(|tok| idx[tok.as_str()]).collect();
            types.into_iter().map(|r| (r, T::one())).collect()
        })
        .collect();
    Ok(GeneratingLayer {
        kind: LayerKind::Lexicon,
        graph: b.build(),
        margins,
    })
}
