// SPDX-License-Identifier: Apache-2.0

use super::FeatureMatrix;
use crate::scalar::{cosine, Scalar};

/// Leave-one-out classifier over the rows of a feature matrix.
pub trait LooClassifier<T: Scalar>: Sync {
    /// Predicted class index for every item, each predicted from all others.
    /// Only columns with `mask[c] == true` are used.
    fn predict_loo(
        &self,
        m: &FeatureMatrix<T>,
        labels: &[usize],
        n_classes: usize,
        mask: &[bool],
    ) -> Vec<usize>;
}

/// k nearest neighbors under cosine distance.
///
/// The `k` nearest items (ordered by distance, then row index) vote with
/// weight `max(0, 1 - distance)`, i.e. their non-negative cosine. Tied
/// classes are resolved by the nearest single neighbor of each tied class,
/// then by class index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Knn {
    pub k: usize,
}

impl Default for Knn {
    fn default() -> Self {
        Knn { k: 3 }
    }
}

impl<T: Scalar> LooClassifier<T> for Knn {
    fn predict_loo(
        &self,
        m: &FeatureMatrix<T>,
        labels: &[usize],
        n_classes: usize,
        mask: &[bool],
    ) -> Vec<usize> {
        let n = m.n_items();
        assert_eq!(labels.len(), n);
        assert_eq!(mask.len(), m.n_features());
        (0..n)
            .map(|i| {
                let own = m.own_column(i);
                let cols: Vec<usize> = (0..m.n_features())
                    .filter(|&c| mask[c] && Some(c) != own)
                    .collect();
                let pick = |r: usize| -> Vec<T> { cols.iter().map(|&c| m.get(r, c)).collect() };
                let xi = pick(i);
                let mut dist: Vec<(T, usize)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (T::one() - cosine(&xi, &pick(j)), j))
                    .collect();
                dist.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
                vote(&dist[..self.k.min(dist.len())], labels, n_classes)
            })
            .collect()
    }
}

fn vote<T: Scalar>(nearest: &[(T, usize)], labels: &[usize], n_classes: usize) -> usize {
    let mut score = vec![T::zero(); n_classes];
    let mut closest: Vec<Option<T>> = vec![None; n_classes];
    for &(d, j) in nearest {
        let c = labels[j];
        score[c] = score[c] + (T::one() - d).max(T::zero());
        if closest[c].is_none_or(|x| d < x) {
            closest[c] = Some(d);
        }
    }
    let present: Vec<usize> = (0..n_classes).filter(|&c| closest[c].is_some()).collect();
    let top = present
        .iter()
        .map(|&c| score[c])
        .fold(T::neg_infinity(), T::max);
    present
        .into_iter()
        .filter(|&c| score[c] == top)
        .min_by(|&a, &b| closest[a].partial_cmp(&closest[b]).unwrap().then(a.cmp(&b)))
        .unwrap_or(0)
}
