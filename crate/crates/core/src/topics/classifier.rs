// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, HashMap};

use super::{TopicDistribution, TopicError, TopicScheme};
use crate::scalar::Scalar;

/// The parts of a text a classifier may look at.
#[derive(Clone, Copy, Debug)]
pub struct TextView<'a> {
    pub id: &'a str,
    pub title: &'a str,
    pub tokens: &'a [String],
}

/// Maps texts to topic distributions.
pub trait Classifier<T: Scalar>: Send + Sync {
    fn classify(&self, text: TextView<'_>) -> Result<TopicDistribution<T>, TopicError>;

    /// Reverse direction: how prototypical `text` is for `topic`. Not
    /// provided by the bundled classifiers.
    fn prototypicality(&self, _topic: &str, _text: TextView<'_>) -> Option<T> {
        None
    }
}

/// Bag-of-words classifier backed by a `token -> (topic, weight)` lexicon.
/// Scores are summed per topic and divided by the largest one.
#[derive(Clone, Debug)]
pub struct LexiconClassifier<T> {
    entries: HashMap<String, Vec<(String, T)>>,
}

impl<T: Scalar> LexiconClassifier<T> {
    pub fn new<I, S, C>(entries: I) -> Result<Self, TopicError>
    where
        I: IntoIterator<Item = (S, C, T)>,
        S: Into<String>,
        C: Into<String>,
    {
        let mut map: HashMap<String, Vec<(String, T)>> = HashMap::new();
        for (tok, code, w) in entries {
            let code = code.into();
            if !w.is_finite() || w < T::zero() {
                return Err(TopicError::InvalidScore {
                    code,
                    value: w.as_f64(),
                });
            }
            map.entry(tok.into()).or_default().push((code, w));
        }
        if map.is_empty() {
            return Err(TopicError::EmptyLexicon);
        }
        Ok(LexiconClassifier { entries: map })
    }

    /// Parses `token<TAB>code<TAB>weight` lines. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_tsv(s: &str) -> Result<Self, TopicError> {
        let mut rows = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| TopicError::MalformedLexicon {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut cols = line.split('\t');
            let (Some(tok), Some(code), Some(w), None) =
                (cols.next(), cols.next(), cols.next(), cols.next())
            else {
                return Err(bad("expected three tab-separated columns"));
            };
            let w: f64 = w
                .trim()
                .parse()
                .map_err(|_| bad("weight is not a number"))?;
            rows.push((tok.to_string(), code.trim().to_string(), T::lit(w)));
        }
        Self::new(rows)
    }

    /// Replaces every lexicon code by its ancestor at `level` of `scheme`.
    pub fn projected(self, scheme: &TopicScheme, level: u8) -> Result<Self, TopicError> {
        let mut entries = HashMap::with_capacity(self.entries.len());
        for (tok, list) in self.entries {
            let mut out = Vec::with_capacity(list.len());
            for (code, w) in list {
                out.push((scheme.ancestor_at(&code, level)?.to_string(), w));
            }
            entries.insert(tok, out);
        }
        Ok(LexiconClassifier { entries })
    }

    /// Fails on the first lexicon code missing from `scheme`.
    pub fn validate(&self, scheme: &TopicScheme) -> Result<(), TopicError> {
        for list in self.entries.values() {
            for (code, _) in list {
                if !scheme.contains(code) {
                    return Err(TopicError::UnknownCode(code.clone()));
                }
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Classifier<T> for LexiconClassifier<T> {
    fn classify(&self, text: TextView<'_>) -> Result<TopicDistribution<T>, TopicError> {
        let mut sums: BTreeMap<&str, T> = BTreeMap::new();
        for tok in text.tokens {
            if let Some(list) = self.entries.get(tok) {
                for (code, w) in list {
                    let e = sums.entry(code.as_str()).or_insert_with(T::zero);
                    *e = *e + *w;
                }
            }
        }
        let max = sums.values().copied().fold(T::zero(), T::max);
        let mut d = TopicDistribution::new();
        if max > T::zero() {
            for (code, s) in sums {
                d.insert(code, s / max)?;
            }
        }
        Ok(d)
    }
}

/// Classifier that looks distributions up by text id.
#[derive(Clone, Debug, Default)]
pub struct PrecomputedClassifier<T: Scalar> {
    table: HashMap<String, TopicDistribution<T>>,
}

impl<T: Scalar> PrecomputedClassifier<T> {
    pub fn new(table: HashMap<String, TopicDistribution<T>>) -> Self {
        PrecomputedClassifier { table }
    }

    pub fn validate(&self, scheme: &TopicScheme) -> Result<(), TopicError> {
        self.table.values().try_for_each(|d| d.validate(scheme))
    }
}

impl<T: Scalar> Classifier<T> for PrecomputedClassifier<T> {
    fn classify(&self, text: TextView<'_>) -> Result<TopicDistribution<T>, TopicError> {
        self.table
            .get(text.id)
            .cloned()
            .ok_or_else(|| TopicError::UnknownText(text.id.to_string()))
    }
}
