//! The scored-sample model shared by every other module.
//!
//! Outliers are the positive class throughout: a detector "flags" a sample
//! when its anomaly score is at or above the decision threshold.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Issue, ValidationError};

/// Ground-truth membership of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Inlier,
    Outlier,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Inlier => "inlier",
            Class::Outlier => "outlier",
        })
    }
}

/// One evaluated data point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredSample {
    pub sample_id: String,
    /// Higher means more anomalous.
    pub anomaly_score: f64,
    pub is_outlier: bool,
    /// Whether the supervised model got this sample right. Only consulted
    /// for inliers.
    pub prediction_correct: Option<bool>,
}

impl ScoredSample {
    pub fn inlier(id: impl Into<String>, score: f64) -> Self {
        Self { sample_id: id.into(), anomaly_score: score, is_outlier: false, prediction_correct: None }
    }

    pub fn outlier(id: impl Into<String>, score: f64) -> Self {
        Self { sample_id: id.into(), anomaly_score: score, is_outlier: true, prediction_correct: None }
    }

    pub fn with_correctness(mut self, correct: bool) -> Self {
        self.prediction_correct = Some(correct);
        self
    }

    pub fn class(&self) -> Class {
        if self.is_outlier {
            Class::Outlier
        } else {
            Class::Inlier
        }
    }

    /// Whether accepting this sample counts as a prediction failure.
    ///
    /// Outliers are always failures whatever their stored flag says. For an
    /// inlier this is `None` when the correctness flag is missing.
    pub fn is_error(&self) -> Option<bool> {
        if self.is_outlier {
            Some(true)
        } else {
            self.prediction_correct.map(|ok| !ok)
        }
    }
}

/// A sample list that passed [`validate_samples`]: every score finite, ids
/// unique, both classes present.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    samples: Vec<ScoredSample>,
    inliers: usize,
    outliers: usize,
}

impl SampleSet {
    pub fn samples(&self) -> &[ScoredSample] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<ScoredSample> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn inlier_count(&self) -> usize {
        self.inliers
    }

    pub fn outlier_count(&self) -> usize {
        self.outliers
    }

    /// True when every inlier carries a correctness flag.
    pub fn has_correctness(&self) -> bool {
        self.samples.iter().all(|s| s.is_outlier || s.prediction_correct.is_some())
    }

    pub fn min_score(&self) -> f64 {
        self.samples.iter().map(|s| s.anomaly_score).fold(f64::INFINITY, f64::min)
    }

    pub fn max_score(&self) -> f64 {
        self.samples.iter().map(|s| s.anomaly_score).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Checks a raw sample list and wraps it as a [`SampleSet`].
///
/// Every problem is reported, not just the first one.
pub fn validate_samples(samples: Vec<ScoredSample>) -> Result<SampleSet, ValidationError> {
    let mut issues = Vec::new();
    let mut seen = HashSet::with_capacity(samples.len());
    let mut inliers = 0;
    let mut outliers = 0;

    for s in &samples {
        if !s.anomaly_score.is_finite() {
            issues.push(Issue::NonFiniteScore { sample_id: s.sample_id.clone() });
        }
        if !seen.insert(s.sample_id.as_str()) {
            issues.push(Issue::DuplicateId { sample_id: s.sample_id.clone() });
        }
        if s.is_outlier {
            outliers += 1;
        } else {
            inliers += 1;
        }
    }
    if inliers == 0 {
        issues.push(Issue::EmptyClass(Class::Inlier));
    }
    if outliers == 0 {
        issues.push(Issue::EmptyClass(Class::Outlier));
    }

    if issues.is_empty() {
        Ok(SampleSet { samples, inliers, outliers })
    } else {
        Err(ValidationError { issues })
    }
}
