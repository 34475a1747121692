// SPDX-License-Identifier: Apache-2.0

//! Topic schemes, topic distributions and text classifiers.

mod classifier;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

pub use classifier::{Classifier, LexiconClassifier, PrecomputedClassifier, TextView};

/// Default number of membership values kept per text.
pub const DEFAULT_TOP_M: usize = 5;

#[derive(Debug, Error)]
pub enum TopicError {
    #[error("malformed topic scheme: {0}")]
    MalformedScheme(String),
    #[error("unknown topic code `{0}`")]
    UnknownCode(String),
    #[error("scheme has no level {0}")]
    BadLevel(u8),
    #[error("topic `{code}` sits at level {actual}, above the requested level {wanted}")]
    LevelTooCoarse {
        code: String,
        actual: u8,
        wanted: u8,
    },
    #[error("lexicon is empty")]
    EmptyLexicon,
    #[error("lexicon line {line}: {msg}")]
    MalformedLexicon { line: usize, msg: String },
    #[error("invalid membership value {value} for topic `{code}`")]
    InvalidScore { code: String, value: f64 },
    #[error("no precomputed topics for text `{0}`")]
    UnknownText(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopicNode {
    pub code: String,
    pub label: String,
    pub level: u8,
    pub parent: Option<String>,
}

#[derive(Deserialize, Serialize)]
struct NestedNode {
    code: String,
    label: String,
    #[serde(default)]
    children: Vec<NestedNode>,
}

/// Tree-shaped reference classification with at most three levels.
#[derive(Clone, Debug, PartialEq)]
pub struct TopicScheme {
    nodes: Vec<TopicNode>,
    index: HashMap<String, usize>,
}

pub const MAX_LEVEL: u8 = 3;

impl TopicScheme {
    /// Parses a JSON array of nested `{code, label, children}` objects.
    pub fn from_json(s: &str) -> Result<Self, TopicError> {
        let roots: Vec<NestedNode> =
            serde_json::from_str(s).map_err(|e| TopicError::MalformedScheme(e.to_string()))?;
        let mut scheme = TopicScheme {
            nodes: Vec::new(),
            index: HashMap::new(),
        };
        for r in &roots {
            scheme.insert(r, 1, None)?;
        }
        Ok(scheme)
    }

    /// The bundled two-level sample scheme: ten top classes, four
    /// subclasses each, with decimal-classification-style codes.
    pub fn sample() -> Self {
        Self::from_json(include_str!("../../data/sample_scheme.json"))
            .expect("bundled scheme is valid")
    }

    fn insert(
        &mut self,
        n: &NestedNode,
        level: u8,
        parent: Option<&str>,
    ) -> Result<(), TopicError> {
        if level > MAX_LEVEL {
            return Err(TopicError::MalformedScheme(format!(
                "`{}` is nested deeper than {MAX_LEVEL} levels",
                n.code
            )));
        }
        if n.code.is_empty() {
            return Err(TopicError::MalformedScheme("empty topic code".into()));
        }
        if self.index.contains_key(&n.code) {
            return Err(TopicError::MalformedScheme(format!(
                "duplicate code `{}`",
                n.code
            )));
        }
        self.index.insert(n.code.clone(), self.nodes.len());
        self.nodes.push(TopicNode {
            code: n.code.clone(),
            label: n.label.clone(),
            level,
            parent: parent.map(str::to_string),
        });
        for c in &n.children {
            self.insert(c, level + 1, Some(&n.code))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        fn nest(s: &TopicScheme, code: Option<&str>) -> Vec<NestedNode> {
            s.nodes
                .iter()
                .filter(|n| n.parent.as_deref() == code)
                .map(|n| NestedNode {
                    code: n.code.clone(),
                    label: n.label.clone(),
                    children: nest(s, Some(&n.code)),
                })
                .collect()
        }
        serde_json::to_string_pretty(&nest(self, None)).expect("scheme serializes")
    }

    pub fn nodes(&self) -> &[TopicNode] {
        &self.nodes
    }

    pub fn node(&self, code: &str) -> Option<&TopicNode> {
        self.index.get(code).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, code: &str) -> bool {
        self.index.contains_key(code)
    }

    pub fn depth(&self) -> u8 {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }

    /// Codes at `level`, in scheme order.
    pub fn codes_at_level(&self, level: u8) -> Vec<&str> {
        self.nodes
            .iter()
            .filter(|n| n.level == level)
            .map(|n| n.code.as_str())
            .collect()
    }

    /// Ancestor of `code` at `level` (the code itself if already there).
    pub fn ancestor_at(&self, code: &str, level: u8) -> Result<&str, TopicError> {
        let mut node = self
            .node(code)
            .ok_or_else(|| TopicError::UnknownCode(code.to_string()))?;
        if node.level < level {
            return Err(TopicError::LevelTooCoarse {
                code: code.to_string(),
                actual: node.level,
                wanted: level,
            });
        }
        while node.level > level {
            let p = node.parent.as_deref().expect("non-root node has a parent");
            node = self.node(p).expect("parent exists");
        }
        Ok(&node.code)
    }
}

/// Sparse topic → membership map. Only strictly positive, finite scores
/// are stored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TopicDistribution<T> {
    scores: BTreeMap<String, T>,
}

impl<T: Scalar> TopicDistribution<T> {
    pub fn new() -> Self {
        TopicDistribution {
            scores: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, TopicError>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
    {
        let mut d = Self::new();
        for (c, v) in pairs {
            d.insert(c, v)?;
        }
        Ok(d)
    }

    /// Stores `value` for `code`; zero is silently dropped.
    pub fn insert(&mut self, code: impl Into<String>, value: T) -> Result<(), TopicError> {
        let code = code.into();
        if !value.is_finite() || value < T::zero() {
            return Err(TopicError::InvalidScore {
                code,
                value: value.as_f64(),
            });
        }
        if value > T::zero() {
            self.scores.insert(code, value);
        } else {
            self.scores.remove(&code);
        }
        Ok(())
    }

    pub fn get(&self, code: &str) -> T {
        self.scores.get(code).copied().unwrap_or_else(T::zero)
    }

    pub fn contains(&self, code: &str) -> bool {
        self.scores.contains_key(code)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> + '_ {
        self.scores.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> + '_ {
        self.scores.keys().map(String::as_str)
    }

    pub fn max(&self) -> Option<T> {
        self.scores.values().copied().reduce(T::max)
    }

    /// Checks that every code belongs to `scheme`.
    pub fn validate(&self, scheme: &TopicScheme) -> Result<(), TopicError> {
        match self.codes().find(|c| !scheme.contains(c)) {
            Some(c) => Err(TopicError::UnknownCode(c.to_string())),
            None => Ok(()),
        }
    }
}

/// Keeps the `m` largest scores (ties by code order) that also reach
/// `global_mean`.
pub fn top_m_filter<T: Scalar>(
    d: &TopicDistribution<T>,
    m: usize,
    global_mean: T,
) -> TopicDistribution<T> {
    let mut ranked: Vec<(&str, T)> = d.iter().collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("finite scores")
            .then_with(|| a.0.cmp(b.0))
    });
    TopicDistribution {
        scores: ranked
            .into_iter()
            .take(m)
            .filter(|&(_, v)| v >= global_mean)
            .map(|(c, v)| (c.to_string(), v))
            .collect(),
    }
}

/// Mean over every positive membership value of every distribution,
/// counting repeated values once per occurrence. Zero when there are none.
pub fn global_mean<'a, T: Scalar + 'a>(
    dists: impl IntoIterator<Item = &'a TopicDistribution<T>>,
) -> T {
    let mut sum = T::zero();
    let mut n = 0usize;
    for d in dists {
        for (_, v) in d.iter() {
            sum = sum + v;
            n += 1;
        }
    }
    if n == 0 {
        T::zero()
    } else {
        sum / T::from_count(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dist(pairs: &[(&str, f64)]) -> TopicDistribution<f64> {
        TopicDistribution::from_pairs(pairs.iter().map(|&(c, v)| (c, v))).unwrap()
    }

    #[test]
    fn sample_scheme_shape() {
        let s = TopicScheme::sample();
        assert_eq!(s.codes_at_level(1).len(), 10);
        assert_eq!(s.codes_at_level(2).len(), 40);
        assert_eq!(s.depth(), 2);
        assert_eq!(s.ancestor_at("530", 1).unwrap(), "500");
        assert_eq!(s.ancestor_at("530", 2).unwrap(), "530");
        assert!(s.ancestor_at("500", 2).is_err());
        let back = TopicScheme::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn scheme_rejects_duplicates_and_deep_nesting() {
        let dup = r#"[{"code":"1","label":"a","children":[{"code":"1","label":"b"}]}]"#;
        assert!(TopicScheme::from_json(dup).is_err());
        let deep = r#"[{"code":"1","label":"a","children":[{"code":"2","label":"b","children":[
            {"code":"3","label":"c","children":[{"code":"4","label":"d"}]}]}]}]"#;
        assert!(TopicScheme::from_json(deep).is_err());
    }

    #[test]
    fn distribution_rejects_bad_scores_and_drops_zero() {
        let mut d = TopicDistribution::<f64>::new();
        assert!(d.insert("a", -0.1).is_err());
        assert!(d.insert("a", f64::NAN).is_err());
        d.insert("a", 0.0).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn single_value_at_mean_survives() {
        assert_eq!(
            top_m_filter(&dist(&[("t", 1.0)]), 5, 1.0),
            dist(&[("t", 1.0)])
        );
    }

    #[test]
    fn values_below_mean_dropped() {
        assert_eq!(
            top_m_filter(&dist(&[("t", 0.9), ("u", 0.1)]), 5, 0.5),
            dist(&[("t", 0.9)])
        );
    }

    #[test]
    fn ties_broken_by_code() {
        let d = dist(&[
            ("f", 0.5),
            ("e", 0.5),
            ("d", 0.5),
            ("c", 0.5),
            ("b", 0.5),
            ("a", 0.9),
        ]);
        let kept = top_m_filter(&d, 5, 0.1);
        let codes: Vec<_> = kept.codes().collect();
        assert_eq!(codes, ["a", "b", "c", "d", "e"]);
    }

    #[test]
    fn global_mean_counts_every_value() {
        let a = dist(&[("x", 1.0), ("y", 0.5)]);
        let b = dist(&[("x", 1.0)]);
        assert!((global_mean([&a, &b]) - 2.5 / 3.0).abs() < 1e-15);
        assert_eq!(global_mean::<f64>([]), 0.0);
    }

    proptest! {
        #[test]
        fn filter_is_a_bounded_subset_above_mean(
            raw in proptest::collection::btree_map("[a-h]", 0.01f64..1.0, 0..8),
            m in 1usize..7,
            mean in 0.0f64..1.0,
        ) {
            let d = TopicDistribution::from_pairs(raw.clone()).unwrap();
            let out = top_m_filter(&d, m, mean);
            prop_assert!(out.len() <= m);
            for (c, v) in out.iter() {
                prop_assert_eq!(d.get(c), v);
                prop_assert!(v >= mean);
            }
        }
    }
}
