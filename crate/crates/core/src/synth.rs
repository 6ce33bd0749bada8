//! Synthetic inlier/outlier cases with analytically known separability.
//!
//! Generation is driven by ChaCha20 seeded from `seed`, with one stream per
//! part (training rows, inlier rows, outlier rows, correctness flags), so a
//! part never changes when another part's size or parameters change.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::supervisors::FeatureMatrix;

/// Two isotropic Gaussians: inliers around `inlier_mean`, outliers around
/// `outlier_mean` (the same value on every axis).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianCaseSpec {
    pub dim: usize,
    pub inlier_mean: f64,
    pub inlier_sigma: f64,
    pub outlier_mean: f64,
    pub outlier_sigma: f64,
    /// Training rows; defaults to `n_inliers`.
    #[serde(default)]
    pub n_train: Option<usize>,
    pub n_inliers: usize,
    pub n_outliers: usize,
    /// Probability that an inlier's prediction is wrong.
    #[serde(default)]
    pub inlier_error_rate: f64,
    pub seed: u64,
}

impl GaussianCaseSpec {
    /// One-dimensional case with unit-free means and shared sigma.
    pub fn one_d(delta_mu: f64, sigma: f64, per_class: usize, seed: u64) -> Self {
        Self {
            dim: 1,
            inlier_mean: 0.0,
            inlier_sigma: sigma,
            outlier_mean: delta_mu,
            outlier_sigma: sigma,
            n_train: None,
            n_inliers: per_class,
            n_outliers: per_class,
            inlier_error_rate: 0.0,
            seed,
        }
    }

    pub fn train_rows(&self) -> usize {
        self.n_train.unwrap_or(self.n_inliers)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.dim == 0 {
            return bad("dim must be at least 1".into());
        }
        for (name, sigma) in [("inlier_sigma", self.inlier_sigma), ("outlier_sigma", self.outlier_sigma)] {
            if !(sigma.is_finite() && sigma > 0.0) {
                return bad(format!("{name} must be positive and finite, got {sigma}"));
            }
        }
        for (name, mean) in [("inlier_mean", self.inlier_mean), ("outlier_mean", self.outlier_mean)] {
            if !mean.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if self.n_inliers == 0 || self.n_outliers == 0 || self.train_rows() == 0 {
            return bad("sample counts must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.inlier_error_rate) {
            return bad(format!("inlier_error_rate must lie in [0, 1], got {}", self.inlier_error_rate));
        }
        Ok(())
    }
}

/// Output of [`generate_gaussian_case`]. Test rows hold all inliers
/// followed by all outliers.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedCase {
    pub train: FeatureMatrix,
    pub test: FeatureMatrix,
    pub is_outlier: Vec<bool>,
    /// `Some` for inliers, `None` for outliers.
    pub correctness: Vec<Option<bool>>,
}

impl GeneratedCase {
    /// Fraction of inliers whose prediction is correct.
    pub fn inlier_accuracy(&self) -> f64 {
        let flags: Vec<bool> = self.correctness.iter().flatten().copied().collect();
        flags.iter().filter(|&&ok| ok).count() as f64 / flags.len() as f64
    }
}

const STREAM_TRAIN: u64 = 0;
const STREAM_INLIERS: u64 = 1;
const STREAM_OUTLIERS: u64 = 2;
const STREAM_CORRECTNESS: u64 = 3;

fn rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw(seed: u64, stream: u64, rows: usize, dim: usize, mean: f64, sigma: f64) -> Vec<f64> {
    let normal = Normal::new(mean, sigma).expect("sigma validated");
    let mut rng = rng(seed, stream);
    (0..rows * dim).map(|_| normal.sample(&mut rng)).collect()
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}-{i:06}")).collect()
}

pub fn generate_gaussian_case(spec: &GaussianCaseSpec) -> Result<GeneratedCase> {
    spec.validate()?;
    let (d, seed) = (spec.dim, spec.seed);
    let n_train = spec.train_rows();

    let train = FeatureMatrix::new(
        ids("train", n_train),
        d,
        draw(seed, STREAM_TRAIN, n_train, d, spec.inlier_mean, spec.inlier_sigma),
    )?;

    let mut values = draw(seed, STREAM_INLIERS, spec.n_inliers, d, spec.inlier_mean, spec.inlier_sigma);
    values.extend(draw(seed, STREAM_OUTLIERS, spec.n_outliers, d, spec.outlier_mean, spec.outlier_sigma));
    let mut row_ids = ids("in", spec.n_inliers);
    row_ids.extend(ids("out", spec.n_outliers));
    let test = FeatureMatrix::new(row_ids, d, values)?;

    let mut flags = rng(seed, STREAM_CORRECTNESS);
    let correctness = (0..spec.n_inliers)
        .map(|_| Some(flags.random::<f64>() >= spec.inlier_error_rate))
        .chain(std::iter::repeat(None).take(spec.n_outliers))
        .collect();

    let mut is_outlier = vec![false; spec.n_inliers];
    is_outlier.resize(spec.n_inliers + spec.n_outliers, true);

    Ok(GeneratedCase { train, test, is_outlier, correctness })
}

/// Reference AUROC for two equal-variance 1-D Gaussians scored by their raw
/// value: `Phi(delta_mu / (sigma * sqrt 2))`.
pub fn analytic_auroc_1d(delta_mu: f64, sigma: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    let z = delta_mu / (sigma * std::f64::consts::SQRT_2);
    Ok(0.5 * erfc(-z / std::f64::consts::SQRT_2))
}
