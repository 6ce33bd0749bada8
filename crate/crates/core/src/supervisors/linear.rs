use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::features::FeatureMatrix;
use crate::error::{Error, Result};

/// Mean plus the top principal directions of the training rows; scores by
/// squared reconstruction residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearRecon {
    pub mean: Vec<f64>,
    /// Orthonormal directions, largest variance first. The first coordinate
    /// of each direction that is not (numerically) zero is positive.
    pub components: Vec<Vec<f64>>,
    /// Variance captured along each direction; surplus directions of
    /// rank-deficient data carry zero.
    pub explained_variance: Vec<f64>,
}

const SIGN_EPS: f64 = 1e-12;

pub fn fit_linear_recon(train: &FeatureMatrix, m: usize) -> Result<LinearRecon> {
    let (n, d) = (train.rows(), train.cols());
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    if m == 0 || m >= d {
        return Err(Error::InvalidArgument(format!(
            "component count must satisfy 1 <= m < {d} (feature dimension), got {m}"
        )));
    }

    let mut mean = vec![0.0; d];
    for row in train.iter_rows() {
        mean.iter_mut().zip(row).for_each(|(m, x)| *m += x);
    }
    mean.iter_mut().for_each(|v| *v /= n as f64);

    let centered = DMatrix::from_fn(n, d, |i, j| train.row(i)[j] - mean[j]);
    let cov = (centered.transpose() * &centered) / n as f64;
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));

    let mut components = Vec::with_capacity(m);
    let mut explained_variance = Vec::with_capacity(m);
    for &j in order.iter().take(m) {
        let mut v: Vec<f64> = eig.eigenvectors.column(j).iter().copied().collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        if v.iter().find(|x| x.abs() > SIGN_EPS).is_some_and(|x| *x < 0.0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        components.push(v);
        explained_variance.push(eig.eigenvalues[j].max(0.0));
    }
    Ok(LinearRecon { mean, components, explained_variance })
}

impl LinearRecon {
    /// Squared norm of the part of `x - mean` outside the fitted subspace.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.mean.len() {
            return Err(Error::DimensionMismatch { expected: self.mean.len(), got: x.len() });
        }
        let mut residual: Vec<f64> = x.iter().zip(&self.mean).map(|(x, m)| x - m).collect();
        for c in &self.components {
            let coef: f64 = residual.iter().zip(c).map(|(r, c)| r * c).sum();
            residual.iter_mut().zip(c).for_each(|(r, c)| *r -= coef * c);
        }
        Ok(residual.iter().map(|r| r * r).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: Vec<Vec<f64>>) -> FeatureMatrix {
        let ids = (0..rows.len()).map(|i| format!("r{i}")).collect();
        FeatureMatrix::from_rows(ids, rows).unwrap()
    }

    #[test]
    fn points_on_the_x_axis() {
        let fit = fit_linear_recon(&matrix(vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![3.0, 0.0]]), 1).unwrap();
        assert_eq!(fit.components, vec![vec![1.0, 0.0]]);
        assert!(fit.score(&[3.0, 0.0]).unwrap().abs() < 1e-12);
        assert!((fit.score(&[0.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(fit.score(&fit.mean.clone()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn sign_convention_and_rank_deficiency() {
        // a single line through 3-D space; the second direction has zero variance
        let rows = (0..5).map(|i| vec![-(i as f64), 2.0 * i as f64, 0.5]).collect();
        let fit = fit_linear_recon(&matrix(rows), 2).unwrap();
        for c in &fit.components {
            let first = c.iter().find(|x| x.abs() > SIGN_EPS).unwrap();
            assert!(*first > 0.0);
            assert!((c.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert!(fit.explained_variance[1].abs() < 1e-12);
        let dot: f64 = fit.components[0].iter().zip(&fit.components[1]).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let train = matrix(vec![vec![1.0, 0.0], vec![2.0, 1.0]]);
        assert!(fit_linear_recon(&train, 2).is_err());
        assert!(fit_linear_recon(&train, 0).is_err());
        assert!(matches!(fit_linear_recon(&matrix(vec![vec![1.0, 0.0]]), 1), Err(Error::TooFewSamples { .. })));
        assert!(fit_linear_recon(&train, 1).unwrap().score(&[1.0]).is_err());
    }
}
