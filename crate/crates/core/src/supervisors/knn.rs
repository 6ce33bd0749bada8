use serde::{Deserialize, Serialize};

use super::features::FeatureMatrix;
use crate::error::{Error, Result};

/// Exact k-nearest-neighbour distance over retained training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnScorer {
    pub k: usize,
    pub train: FeatureMatrix,
}

pub fn fit_knn(train: &FeatureMatrix, k: usize) -> Result<KnnScorer> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > train.rows() {
        return Err(Error::KTooLarge { k, rows: train.rows() });
    }
    Ok(KnnScorer { k, train: train.clone() })
}

impl KnnScorer {
    /// Euclidean distance from `x` to its k-th nearest training row.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.train.cols() {
            return Err(Error::DimensionMismatch { expected: self.train.cols(), got: x.len() });
        }
        let mut d2: Vec<f64> =
            self.train.iter_rows().map(|row| row.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum()).collect();
        let (_, kth, _) = d2.select_nth_unstable_by(self.k - 1, f64::total_cmp);
        Ok(kth.sqrt())
    }
}
