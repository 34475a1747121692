// SPDX-License-Identifier: Apache-2.0

//! Random baselines against which observed classification scores are read.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    macro_f, run_mode, FeatureMatrix, GeneticConfig, GoldStandard, LearningError, LooClassifier,
    SearchMode, Task,
};
use crate::graph::{er_rewire, LabeledDigraph};
use crate::scalar::Scalar;
use crate::similarity::{similarity_matrix_graphs, MeasureContext, MeasureId, SimilarityError};

/// Mean and population standard deviation of repeated scores.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreDistribution {
    pub mean: f64,
    pub sd: f64,
    pub scores: Vec<f64>,
}

impl ScoreDistribution {
    pub fn from_scores(scores: Vec<f64>) -> Self {
        let n = scores.len().max(1) as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
        ScoreDistribution {
            mean,
            sd: var.sqrt(),
            scores,
        }
    }
}

/// Seed of repetition `rep` derived from a run seed.
fn rep_seed(seed: u64, rep: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(rep as u64)
}

/// B1: the gold labels randomly permuted over the items (class sizes kept),
/// scored against the gold standard. Returns mean and sd over `iterations`.
pub fn baseline_b1(
    gold: &GoldStandard,
    iterations: usize,
    seed: u64,
) -> Result<ScoreDistribution, LearningError> {
    if iterations == 0 {
        return Err(LearningError::InvalidConfig(
            "iterations must be at least 1".into(),
        ));
    }
    let k = gold.class_labels().len();
    let truth = gold.labels_for(gold.items())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = truth.clone();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..iterations {
        perm.shuffle(&mut rng);
        let f = macro_f(k, &truth, &perm);
        sum += f;
        sum_sq += f * f;
    }
    let n = iterations as f64;
    let mean = sum / n;
    Ok(ScoreDistribution {
        mean,
        sd: (sum_sq / n - mean * mean).max(0.0).sqrt(),
        scores: Vec::new(),
    })
}

/// B2: every network is rewired into a random graph with the same vertex
/// weights, arc count and arc weight multiset; the rewired set is compared
/// and classified like the observed one.
#[allow(clippy::too_many_arguments)]
pub fn baseline_b2<T: Scalar>(
    ids: &[String],
    graphs: &[&LabeledDigraph<T>],
    measure: MeasureId,
    ctx: &MeasureContext<'_>,
    gold: &GoldStandard,
    classifier: &dyn LooClassifier<T>,
    mode: SearchMode,
    ga: &GeneticConfig,
    reps: usize,
    seed: u64,
) -> Result<ScoreDistribution, SimilarityError> {
    if reps == 0 {
        return Err(LearningError::InvalidConfig("reps must be at least 1".into()).into());
    }
    let mut scores = Vec::with_capacity(reps);
    for rep in 0..reps {
        let s = rep_seed(seed, rep);
        let rewired: Vec<LabeledDigraph<T>> = graphs
            .iter()
            .enumerate()
            .map(|(i, g)| er_rewire(g, s.wrapping_add(i as u64 * 7919)))
            .collect();
        let refs: Vec<&LabeledDigraph<T>> = rewired.iter().collect();
        let m = similarity_matrix_graphs(ids, &refs, measure, ctx)?;
        let task = Task::new(&m, gold, classifier)?;
        let ga = GeneticConfig {
            seed: s,
            ..ga.clone()
        };
        scores.push(run_mode(&task, mode, &ga)?.report.macro_f);
    }
    Ok(ScoreDistribution::from_scores(scores))
}

/// Symmetric random matrix with unit diagonal and off-diagonal entries drawn
/// uniformly from `[lo, hi]`.
pub fn random_symmetric_matrix(
    ids: &[String],
    lo: f64,
    hi: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    let n = ids.len();
    let mut rows = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
            rows[i][j] = x;
            rows[j][i] = x;
        }
    }
    rows
}

/// B3: random similarity matrices over the measure's codomain.
pub fn baseline_b3(
    gold: &GoldStandard,
    range: (f64, f64),
    classifier: &dyn LooClassifier<f64>,
    mode: SearchMode,
    ga: &GeneticConfig,
    reps: usize,
    seed: u64,
) -> Result<ScoreDistribution, LearningError> {
    if reps == 0 {
        return Err(LearningError::InvalidConfig(
            "reps must be at least 1".into(),
        ));
    }
    let ids = gold.items().to_vec();
    let mut scores = Vec::with_capacity(reps);
    for rep in 0..reps {
        let s = rep_seed(seed, rep);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let rows = random_symmetric_matrix(&ids, range.0, range.1, &mut rng);
        let m = FeatureMatrix::square(ids.clone(), rows)?.with_measure("random");
        let task = Task::new(&m, gold, classifier)?;
        let ga = GeneticConfig {
            seed: s,
            ..ga.clone()
        };
        scores.push(run_mode(&task, mode, &ga)?.report.macro_f);
    }
    Ok(ScoreDistribution::from_scores(scores))
}

/// Random assignment of `n` items to `k` non-empty classes. Class sizes are
/// a uniformly drawn composition of `n` into `k` parts.
pub fn random_partition(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    assert!(k >= 1 && k <= n);
    let mut cuts = rand::seq::index::sample(rng, n - 1, k - 1).into_vec();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts {
        sizes.push(c + 1 - prev);
        prev = c + 1;
    }
    sizes.push(n - prev);
    let mut labels: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    labels.shuffle(rng);
    labels
}

const B4_MAX_DRAWS: usize = 10_000;

/// Random partition (as in [`random_partition`]) that differs from `truth`.
pub fn non_gold_partition(
    truth: &[usize],
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>, LearningError> {
    (0..B4_MAX_DRAWS)
        .map(|_| random_partition(truth.len(), k, rng))
        .find(|l| l != truth)
        .ok_or_else(|| {
            LearningError::InvalidConfig(
                "no random partition differs from the gold standard".into(),
            )
        })
}

/// B4: the observed matrix classified against random classes with random
/// cardinalities. A draw reproducing the gold assignment is rejected.
#[allow(clippy::too_many_arguments)]
pub fn baseline_b4<T: Scalar>(
    m: &FeatureMatrix<T>,
    gold: &GoldStandard,
    n_classes: usize,
    classifier: &dyn LooClassifier<T>,
    mode: SearchMode,
    ga: &GeneticConfig,
    reps: usize,
    seed: u64,
) -> Result<ScoreDistribution, LearningError> {
    if reps == 0 {
        return Err(LearningError::InvalidConfig(
            "reps must be at least 1".into(),
        ));
    }
    let n = m.n_items();
    if n_classes == 0 || n_classes > n {
        return Err(LearningError::InvalidConfig(format!(
            "cannot split {n} items into {n_classes} non-empty classes"
        )));
    }
    let truth = gold.labels_for(m.ids())?;
    let names: Vec<String> = if n_classes == gold.class_labels().len() {
        gold.class_labels()
    } else {
        (0..n_classes).map(|c| format!("r{c}")).collect()
    };
    let mut scores = Vec::with_capacity(reps);
    for rep in 0..reps {
        let s = rep_seed(seed, rep);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let labels = non_gold_partition(&truth, n_classes, &mut rng)?;
        let task = Task::with_labels(m, labels, names.clone(), classifier)?;
        let ga = GeneticConfig {
            seed: s,
            ..ga.clone()
        };
        scores.push(run_mode(&task, mode, &ga)?.report.macro_f);
    }
    Ok(ScoreDistribution::from_scores(scores))
}
