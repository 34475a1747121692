// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub class: String,
    pub size: usize,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

/// Per-class precision, recall and F plus the macro average.
/// `confusion[t][p]` counts items of true class `t` predicted as `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classes: Vec<ClassScores>,
    pub macro_f: f64,
    pub accuracy: f64,
    pub confusion: Vec<Vec<usize>>,
}

impl EvalReport {
    pub fn score(labels: &[String], truth: &[usize], predicted: &[usize]) -> Self {
        assert_eq!(truth.len(), predicted.len());
        let k = labels.len();
        let mut confusion = vec![vec![0usize; k]; k];
        for (&t, &p) in truth.iter().zip(predicted) {
            confusion[t][p] += 1;
        }
        let classes: Vec<ClassScores> = (0..k)
            .map(|c| {
                let tp = confusion[c][c] as f64;
                let size: usize = confusion[c].iter().sum();
                let predicted: usize = confusion.iter().map(|row| row[c]).sum();
                let precision = if predicted > 0 {
                    tp / predicted as f64
                } else {
                    0.0
                };
                let recall = if size > 0 { tp / size as f64 } else { 0.0 };
                let f = if precision + recall > 0.0 {
                    2.0 * precision * recall / (precision + recall)
                } else {
                    0.0
                };
                ClassScores {
                    class: labels[c].clone(),
                    size,
                    precision,
                    recall,
                    f,
                }
            })
            .collect();
        let macro_f = if k > 0 {
            classes.iter().map(|c| c.f).sum::<f64>() / k as f64
        } else {
            0.0
        };
        let correct: usize = (0..k).map(|c| confusion[c][c]).sum();
        let accuracy = if truth.is_empty() {
            0.0
        } else {
            correct as f64 / truth.len() as f64
        };
        EvalReport {
            classes,
            macro_f,
            accuracy,
            confusion,
        }
    }
}

/// Macro-averaged F of a labeling without building the full report.
pub fn macro_f(n_classes: usize, truth: &[usize], predicted: &[usize]) -> f64 {
    let labels: Vec<String> = (0..n_classes).map(|c| c.to_string()).collect();
    EvalReport::score(&labels, truth, predicted).macro_f
}
