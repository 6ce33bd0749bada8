use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::features::FeatureMatrix;
use crate::error::{Error, Result};

/// Smallest variance kept per dimension; constant features are raised to it.
pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Axis-aligned Gaussian density fitted to inlier training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNll {
    pub mean: Vec<f64>,
    pub variance: Vec<f64>,
    /// Dimensions whose fitted variance was raised to [`VARIANCE_FLOOR`].
    pub floored_dims: Vec<usize>,
}

/// Per-dimension maximum-likelihood mean and (divisor-N) variance.
pub fn fit_gaussian_nll(train: &FeatureMatrix) -> Result<GaussianNll> {
    let n = train.rows();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let d = train.cols();
    let mut mean = vec![0.0; d];
    for row in train.iter_rows() {
        for (m, x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);

    let mut variance = vec![0.0; d];
    for row in train.iter_rows() {
        for ((v, x), m) in variance.iter_mut().zip(row).zip(&mean) {
            *v += (x - m) * (x - m);
        }
    }
    let mut floored_dims = Vec::new();
    for (j, v) in variance.iter_mut().enumerate() {
        *v /= n as f64;
        if *v < VARIANCE_FLOOR {
            *v = VARIANCE_FLOOR;
            floored_dims.push(j);
        }
    }
    Ok(GaussianNll { mean, variance, floored_dims })
}

impl GaussianNll {
    /// Negative log-density of `x`; higher is more anomalous.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.mean.len() {
            return Err(Error::DimensionMismatch { expected: self.mean.len(), got: x.len() });
        }
        Ok(x.iter()
            .zip(&self.mean)
            .zip(&self.variance)
            .map(|((x, m), v)| 0.5 * (2.0 * PI * v).ln() + (x - m) * (x - m) / (2.0 * v))
            .sum())
    }
}
