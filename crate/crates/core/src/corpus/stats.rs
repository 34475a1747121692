// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Corpus, CorpusError};

/// Average co-authorship weight estimated on a sample of Wikipedia
/// articles.
pub const DEFAULT_MEAN_COAUTHORSHIP: f64 = 0.0027564072092594585;

/// Expected activity level, author count and co-authorship strength that
/// author-driven weighting compares against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceStats {
    pub mean_activity: f64,
    pub mean_author_count: f64,
    #[serde(default = "default_coauthorship")]
    pub mean_coauthorship: f64,
}

fn default_coauthorship() -> f64 {
    DEFAULT_MEAN_COAUTHORSHIP
}

impl ReferenceStats {
    /// Estimates the activity statistics from a corpus; the co-authorship
    /// mean keeps its default.
    pub fn from_corpus(c: &Corpus) -> Result<Self, CorpusError> {
        if c.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        if c.history().is_empty() {
            return Err(CorpusError::EmptyHistory);
        }
        let table = c.history().activity_table();
        let mut per_text: BTreeMap<&str, usize> = BTreeMap::new();
        let (mut sum, mut n) = (0.0, 0usize);
        for (&(text, _), &act) in &table {
            if act > 0.0 {
                sum += act;
                n += 1;
                *per_text.entry(text).or_insert(0) += 1;
            }
        }
        if n == 0 {
            return Err(CorpusError::EmptyHistory);
        }
        let authors: usize = per_text.values().sum();
        Ok(ReferenceStats {
            mean_activity: sum / n as f64,
            mean_author_count: authors as f64 / c.len() as f64,
            mean_coauthorship: DEFAULT_MEAN_COAUTHORSHIP,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, CorpusError> {
        let stats: Self =
            serde_json::from_str(s).map_err(|e| CorpusError::Malformed(e.to_string()))?;
        stats.validate()?;
        Ok(stats)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        for (name, v) in [
            ("mean_activity", self.mean_activity),
            ("mean_author_count", self.mean_author_count),
            ("mean_coauthorship", self.mean_coauthorship),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CorpusError::Malformed(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::CorpusDocument;
    use super::*;

    #[test]
    fn default_coauthorship_constant() {
        assert_eq!(DEFAULT_MEAN_COAUTHORSHIP, 0.0027564072092594585);
        let s = ReferenceStats::from_json(r#"{"mean_activity":3,"mean_author_count":2}"#).unwrap();
        assert_eq!(s.mean_coauthorship, DEFAULT_MEAN_COAUTHORSHIP);
    }

    #[test]
    fn constant_sample() {
        let texts = vec![text("x", &[], &[]), text("y", &[], &[])];
        let revisions = vec![
            rev("x", "a", 3.0),
            rev("x", "b", 3.0),
            rev("y", "a", 1.0),
            rev("y", "a", 2.0),
            rev("y", "c", 3.0),
        ];
        let c = Corpus::from_document(CorpusDocument {
            texts,
            revisions,
            ..Default::default()
        })
        .unwrap();
        let s = ReferenceStats::from_corpus(&c).unwrap();
        assert_eq!(s.mean_activity, 3.0);
        assert_eq!(s.mean_author_count, 2.0);
    }

    #[test]
    fn single_author_single_text() {
        let c = Corpus::from_document(CorpusDocument {
            texts: vec![text("x", &[], &[])],
            revisions: vec![rev("x", "a", 5.0)],
            ..Default::default()
        })
        .unwrap();
        let s = ReferenceStats::from_corpus(&c).unwrap();
        assert_eq!(
            (s.mean_activity, s.mean_author_count, s.mean_coauthorship),
            (5.0, 1.0, DEFAULT_MEAN_COAUTHORSHIP)
        );
    }

    #[test]
    fn empty_history_is_an_error() {
        let c = Corpus::from_document(CorpusDocument {
            texts: vec![text("x", &[], &[])],
            ..Default::default()
        })
        .unwrap();
        assert!(matches!(
            ReferenceStats::from_corpus(&c),
            Err(CorpusError::EmptyHistory)
        ));
        assert!(ReferenceStats::from_json(r#"{"mean_activity":0,"mean_author_count":2}"#).is_err());
    }
}
