// SPDX-License-Identifier: Apache-2.0

//! Classification of networks by their similarity profiles.
//!
//! A [`Task`] binds a feature matrix to item labels and a leave-one-out
//! classifier. Fitness of a feature mask is the macro-averaged F-score.
//! [`SearchMode`] selects between all features, genetic search, and genetic
//! search followed by feature minimization.

mod baselines;
mod eval;
mod genetic;
mod knn;
mod matrix;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use baselines::{
    baseline_b1, baseline_b2, baseline_b3, baseline_b4, non_gold_partition, random_partition,
    random_symmetric_matrix, ScoreDistribution,
};
pub use eval::{macro_f, ClassScores, EvalReport};
pub use genetic::{genetic_search, minimize_features, GeneticConfig, SearchOutcome};
pub use knn::{Knn, LooClassifier};
pub use matrix::{FeatureMatrix, GoldStandard};

use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum LearningError {
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("duplicate item `{0}`")]
    DuplicateItem(String),
    #[error("unknown item `{0}`")]
    UnknownItem(String),
    #[error("non-finite value {1} in row `{0}`")]
    NonFinite(String, f64),
    #[error("a gold standard needs at least two classes")]
    TooFewClasses,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Feature matrix, item labels and classifier.
pub struct Task<'a, T: Scalar> {
    matrix: &'a FeatureMatrix<T>,
    labels: Vec<usize>,
    class_labels: Vec<String>,
    classifier: &'a dyn LooClassifier<T>,
}

impl<'a, T: Scalar> Task<'a, T> {
    /// Labels taken from `gold` for the matrix rows.
    pub fn new(
        matrix: &'a FeatureMatrix<T>,
        gold: &GoldStandard,
        classifier: &'a dyn LooClassifier<T>,
    ) -> Result<Self, LearningError> {
        let labels = gold.labels_for(matrix.ids())?;
        Self::with_labels(matrix, labels, gold.class_labels(), classifier)
    }

    pub fn with_labels(
        matrix: &'a FeatureMatrix<T>,
        labels: Vec<usize>,
        class_labels: Vec<String>,
        classifier: &'a dyn LooClassifier<T>,
    ) -> Result<Self, LearningError> {
        if labels.len() != matrix.n_items() {
            return Err(LearningError::Shape(format!(
                "{} labels for {} items",
                labels.len(),
                matrix.n_items()
            )));
        }
        if labels.iter().any(|&l| l >= class_labels.len()) {
            return Err(LearningError::Shape("label index out of range".into()));
        }
        Ok(Task {
            matrix,
            labels,
            class_labels,
            classifier,
        })
    }

    pub fn n_features(&self) -> usize {
        self.matrix.n_features()
    }

    pub fn evaluate(&self, mask: &[bool]) -> EvalReport {
        let predicted =
            self.classifier
                .predict_loo(self.matrix, &self.labels, self.class_labels.len(), mask);
        EvalReport::score(&self.class_labels, &self.labels, &predicted)
    }

    pub fn fitness(&self, mask: &[bool]) -> f64 {
        self.evaluate(mask).macro_f
    }
}

/// Leave-one-out k-NN (k = 3) scores of `m` against `gold` on the masked columns.
pub fn classify_loo<T: Scalar>(
    m: &FeatureMatrix<T>,
    gold: &GoldStandard,
    mask: &[bool],
) -> Result<EvalReport, LearningError> {
    if mask.len() != m.n_features() {
        return Err(LearningError::Shape(format!(
            "mask of length {} for {} features",
            mask.len(),
            m.n_features()
        )));
    }
    Ok(Task::new(m, gold, &Knn::default())?.evaluate(mask))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Every feature.
    All,
    /// Genetic feature-subset search.
    Opt,
    /// Genetic search, then greedy feature minimization.
    Ext,
}

impl std::str::FromStr for SearchMode {
    type Err = LearningError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(SearchMode::All),
            "opt" => Ok(SearchMode::Opt),
            "ext" => Ok(SearchMode::Ext),
            other => Err(LearningError::InvalidConfig(format!(
                "unknown mode `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub mode: SearchMode,
    pub mask: Vec<bool>,
    pub selected: Vec<String>,
    pub report: EvalReport,
    pub search: Option<SearchOutcome>,
}

/// Classifies under `mode`; `ga` is used by the search modes only.
pub fn run_mode<T: Scalar>(
    task: &Task<'_, T>,
    mode: SearchMode,
    ga: &GeneticConfig,
) -> Result<Classification, LearningError> {
    let search = match mode {
        SearchMode::All => None,
        SearchMode::Opt => Some(genetic_search(task, ga)?),
        SearchMode::Ext => {
            let s = genetic_search(task, ga)?;
            Some(minimize_features(task, &s, ga.ext_rounds, ga.seed))
        }
    };
    let mask = search
        .as_ref()
        .map_or_else(|| vec![true; task.n_features()], |s| s.mask.clone());
    let selected = task
        .matrix
        .columns()
        .iter()
        .zip(&mask)
        .filter(|(_, &b)| b)
        .map(|(c, _)| c.clone())
        .collect();
    Ok(Classification {
        mode,
        report: task.evaluate(&mask),
        mask,
        selected,
        search,
    })
}
