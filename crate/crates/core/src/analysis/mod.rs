// SPDX-License-Identifier: Apache-2.0

//! Distribution fits and community overlap.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Corpus;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("a power-law fit needs at least 3 values, got {0}")]
    TooFewValues(usize),
    #[error("power-law fits need positive finite values, found {0}")]
    NonPositive(f64),
    #[error("{name} must lie in [0, 1], got {value}")]
    OutOfRange { name: &'static str, value: f64 },
}

/// `w_r ≈ c · r^(-exponent)` fitted on the rank–value pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub adjusted_r2: f64,
    pub n: usize,
}

/// Values sorted descending and paired with their 1-based rank.
pub fn rank_table(weights: &[f64]) -> Vec<(usize, f64)> {
    let mut w = weights.to_vec();
    w.sort_by(|a, b| b.partial_cmp(a).unwrap());
    w.into_iter().enumerate().map(|(i, x)| (i + 1, x)).collect()
}

/// Ordinary least squares of `ln w` on `ln r`. When the response has no
/// variance the exponent is 0 and R² is reported as 0.
pub fn powerlaw_fit(weights: &[f64]) -> Result<PowerFit, AnalysisError> {
    let n = weights.len();
    if n < 3 {
        return Err(AnalysisError::TooFewValues(n));
    }
    if let Some(&w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(AnalysisError::NonPositive(w));
    }
    let pts: Vec<(f64, f64)> = rank_table(weights)
        .into_iter()
        .map(|(r, w)| ((r as f64).ln(), w.ln()))
        .collect();
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy > 0.0 {
        let sse: f64 = pts
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum();
        1.0 - sse / syy
    } else {
        0.0
    };
    let adjusted_r2 = if syy > 0.0 {
        1.0 - (1.0 - r2) * (nf - 1.0) / (nf - 2.0)
    } else {
        0.0
    };
    Ok(PowerFit {
        exponent: if syy > 0.0 { -slope } else { 0.0 },
        prefactor: intercept.exp(),
        adjusted_r2,
        n,
    })
}

/// Normalized activity share per author of one community.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CommunityProfile {
    shares: BTreeMap<String, f64>,
}

impl CommunityProfile {
    /// Shares from raw activities; non-positive entries are dropped.
    pub fn from_activity<I, S>(activity: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut raw: BTreeMap<String, f64> = BTreeMap::new();
        for (a, x) in activity {
            if x > 0.0 {
                *raw.entry(a.into()).or_insert(0.0) += x;
            }
        }
        let total: f64 = raw.values().sum();
        if total > 0.0 {
            raw.values_mut().for_each(|v| *v /= total);
        }
        CommunityProfile { shares: raw }
    }

    /// Author activity summed over the corpus' texts. With `authors`, only
    /// those authors are kept before normalizing.
    pub fn from_corpus(corpus: &Corpus, authors: Option<&BTreeSet<String>>) -> Self {
        Self::from_activity(
            corpus
                .history()
                .revisions()
                .iter()
                .filter(|r| corpus.text(&r.text).is_some())
                .filter(|r| authors.is_none_or(|s| s.contains(&r.author)))
                .map(|r| (r.author.clone(), r.bytes_added)),
        )
    }

    pub fn share(&self, author: &str) -> f64 {
        self.shares.get(author).copied().unwrap_or(0.0)
    }

    pub fn shares(&self) -> &BTreeMap<String, f64> {
        &self.shares
    }

    pub fn is_empty(&self) -> bool {
        self.shares.is_empty()
    }
}

/// Σ min(share) / Σ max(share) over the union of authors; 0 when both are empty.
pub fn fuzzy_jaccard(a: &CommunityProfile, b: &CommunityProfile) -> f64 {
    let authors: BTreeSet<&String> = a.shares.keys().chain(b.shares.keys()).collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for r in authors {
        let (x, y) = (a.share(r), b.share(r));
        num += x.min(y);
        den += x.max(y);
    }
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// `-1 + closeness + similarity` for inputs in [0, 1].
pub fn heat_value(closeness: f64, similarity: f64) -> Result<f64, AnalysisError> {
    for (name, value) in [("closeness", closeness), ("similarity", similarity)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(AnalysisError::OutOfRange { name, value });
        }
    }
    Ok(-1.0 + closeness + similarity)
}
