//! Built-in anomaly-scoring rules.
//!
//! [`softmax_max_score`] works on class probabilities directly. The fitted
//! scorers learn from inlier training rows only and never see outliers.

mod features;
mod gaussian;
mod knn;
mod linear;
mod softmax;

pub use features::FeatureMatrix;
pub use gaussian::{fit_gaussian_nll, GaussianNll, VARIANCE_FLOOR};
pub use knn::{fit_knn, KnnScorer};
pub use linear::{fit_linear_recon, LinearRecon};
pub use softmax::{softmax, softmax_max_score, ProbabilityVector, PROBABILITY_SUM_TOLERANCE};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::ScoredSample;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FittedScorer {
    GaussianNll(GaussianNll),
    KnnDist(KnnScorer),
    LinearRecon(LinearRecon),
}

impl FittedScorer {
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        match self {
            FittedScorer::GaussianNll(s) => s.score(x),
            FittedScorer::KnnDist(s) => s.score(x),
            FittedScorer::LinearRecon(s) => s.score(x),
        }
    }
}

/// A rule as written in a manifest or picked on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleConfig {
    /// `1 - max_i p_i` over rows that are probability vectors.
    SoftmaxMax,
    GaussianNll,
    Knn {
        k: usize,
    },
    LinearRecon {
        components: usize,
    },
    /// The raw value of one feature column.
    Coordinate {
        #[serde(default)]
        index: usize,
    },
}

impl RuleConfig {
    pub fn needs_training(&self) -> bool {
        matches!(self, RuleConfig::GaussianNll | RuleConfig::Knn { .. } | RuleConfig::LinearRecon { .. })
    }

    /// Fits the rule where needed. `train` must hold inlier rows only.
    pub fn build(&self, train: Option<&FeatureMatrix>) -> Result<ScoringRule> {
        let train = || train.ok_or_else(|| Error::InvalidArgument(format!("rule {self:?} needs a training matrix")));
        Ok(match *self {
            RuleConfig::SoftmaxMax => ScoringRule::SoftmaxMax,
            RuleConfig::Coordinate { index } => ScoringRule::Coordinate(index),
            RuleConfig::GaussianNll => ScoringRule::Fitted(FittedScorer::GaussianNll(fit_gaussian_nll(train()?)?)),
            RuleConfig::Knn { k } => ScoringRule::Fitted(FittedScorer::KnnDist(fit_knn(train()?, k)?)),
            RuleConfig::LinearRecon { components } => {
                ScoringRule::Fitted(FittedScorer::LinearRecon(fit_linear_recon(train()?, components)?))
            }
        })
    }
}

/// A ready-to-apply scoring rule.
#[derive(Debug, Clone, PartialEq)]
pub enum ScoringRule {
    SoftmaxMax,
    Coordinate(usize),
    Fitted(FittedScorer),
}

impl ScoringRule {
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        match self {
            ScoringRule::SoftmaxMax => Ok(softmax_max_score(&ProbabilityVector::new(x.to_vec())?)),
            ScoringRule::Coordinate(i) => {
                x.get(*i).copied().ok_or(Error::DimensionMismatch { expected: i + 1, got: x.len() })
            }
            ScoringRule::Fitted(s) => s.score(x),
        }
    }
}

/// Scores every row and pairs it with its label and optional correctness
/// flag, keeping the matrix's row ids.
pub fn score_matrix(
    rule: &ScoringRule,
    features: &FeatureMatrix,
    is_outlier: &[bool],
    correctness: Option<&[Option<bool>]>,
) -> Result<Vec<ScoredSample>> {
    let n = features.rows();
    if is_outlier.len() != n {
        return Err(Error::LengthMismatch { what: "labels", expected: n, got: is_outlier.len() });
    }
    if let Some(c) = correctness {
        if c.len() != n {
            return Err(Error::LengthMismatch { what: "correctness flags", expected: n, got: c.len() });
        }
    }
    features
        .iter_rows()
        .zip(features.row_ids())
        .enumerate()
        .map(|(i, (row, id))| {
            Ok(ScoredSample {
                sample_id: id.clone(),
                anomaly_score: rule.score(row)?,
                is_outlier: is_outlier[i],
                prediction_correct: correctness.and_then(|c| c[i]),
            })
        })
        .collect()
}
