mod common;

use common::seeded;
use nalgebra::DMatrix;
use proptest::prelude::*;
use supeval::supervisors::{
    fit_gaussian_nll, fit_knn, fit_linear_recon, softmax, softmax_max_score, FeatureMatrix, FittedScorer,
    ProbabilityVector, RuleConfig, ScoringRule,
};
use supeval::synth::{generate_gaussian_case, GaussianCaseSpec};

fn matrix(rows: &[Vec<f64>]) -> FeatureMatrix {
    FeatureMatrix::from_rows((0..rows.len()).map(|i| format!("r{i}")).collect(), rows.to_vec()).unwrap()
}

fn rows(n: std::ops::Range<usize>, d: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    proptest::collection::vec(proptest::collection::vec(-10.0..10.0f64, d), n)
}

/// Orthogonal matrix from the QR factorisation of a seeded random matrix.
fn rotation(d: usize, entries: &[f64]) -> DMatrix<f64> {
    DMatrix::from_column_slice(d, d, &entries[..d * d]).qr().q()
}

/// Covariance eigenvalues, largest first.
fn variances(rows: &[Vec<f64>]) -> Vec<f64> {
    let (n, d) = (rows.len(), rows[0].len());
    let x = DMatrix::from_fn(n, d, |i, j| rows[i][j]);
    let mean = x.row_mean();
    let c = DMatrix::from_fn(n, d, |i, j| x[(i, j)] - mean[j]);
    let mut ev: Vec<f64> = ((c.transpose() * &c) / n as f64).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn apply(q: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (q * DMatrix::from_column_slice(x.len(), 1, x)).iter().copied().collect()
}

proptest! {
    #![proptest_config(seeded(64, 0x5eed_0002))]

    #[test]
    fn softmax_score_range(logits in proptest::collection::vec(-30.0..30.0f64, 1..12)) {
        let p = softmax(&logits).unwrap();
        let s = softmax_max_score(&p);
        let d = logits.len() as f64;
        prop_assert!(s >= 0.0 && s <= 1.0 - 1.0 / d + 1e-12);
    }

    #[test]
    fn softmax_ignores_logit_shift(logits in proptest::collection::vec(-30.0..30.0f64, 1..12), c in -500.0..500.0f64) {
        let a = softmax(&logits).unwrap();
        let shifted: Vec<f64> = logits.iter().map(|l| l + c).collect();
        let b = softmax(&shifted).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
        prop_assert!((softmax_max_score(&a) - softmax_max_score(&b)).abs() <= 1e-9);
    }

    #[test]
    fn gaussian_nll_is_translation_equivariant(
        train in rows(3..30, 3),
        query in proptest::collection::vec(-10.0..10.0f64, 3),
        shift in proptest::collection::vec(-100.0..100.0f64, 3),
    ) {
        let moved: Vec<Vec<f64>> = train.iter().map(|r| r.iter().zip(&shift).map(|(x, s)| x + s).collect()).collect();
        let q2: Vec<f64> = query.iter().zip(&shift).map(|(x, s)| x + s).collect();
        let a = fit_gaussian_nll(&matrix(&train)).unwrap().score(&query).unwrap();
        let b = fit_gaussian_nll(&matrix(&moved)).unwrap().score(&q2).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn knn_is_a_distance(train in rows(1..25, 2), query in proptest::collection::vec(-10.0..10.0f64, 2), k in 1usize..5) {
        let m = matrix(&train);
        prop_assume!(k <= m.rows());
        let scorer = fit_knn(&m, k).unwrap();
        let s = scorer.score(&query).unwrap();
        prop_assert!(s >= 0.0);
        // A query at a training row scores zero exactly when k = 1 or the
        // row is repeated at least k times.
        let at = &train[0];
        let copies = train.iter().filter(|r| *r == at).count();
        let zero = scorer.score(at).unwrap() == 0.0;
        prop_assert_eq!(zero, copies >= k);
        // Triangle inequality against the query.
        let d: f64 = at.iter().zip(&query).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        prop_assert!(s <= scorer.score(at).unwrap() + d + 1e-9);
    }

    #[test]
    fn linear_recon_is_rotation_invariant(
        raw in rows(20..60, 4),
        query in proptest::collection::vec(-10.0..10.0f64, 4),
        entries in proptest::collection::vec(-1.0..1.0f64, 16),
    ) {
        // Stretch the axes so the spectrum has clear gaps.
        let scale = [8.0, 4.0, 1.0, 0.25];
        let train: Vec<Vec<f64>> = raw.iter().map(|r| r.iter().zip(scale).map(|(x, s)| x * s).collect()).collect();
        let q = rotation(4, &entries);
        let rotated: Vec<Vec<f64>> = train.iter().map(|r| apply(&q, r)).collect();
        let spectrum = variances(&train);
        for m in 1..4 {
            // Invariance only holds when the retained subspace is unique.
            if spectrum[m - 1] - spectrum[m] < 1e-3 {
                continue;
            }
            let a = fit_linear_recon(&matrix(&train), m).unwrap();
            let b = fit_linear_recon(&matrix(&rotated), m).unwrap();
            let (sa, sb) = (a.score(&query).unwrap(), b.score(&apply(&q, &query)).unwrap());
            prop_assert!((sa - sb).abs() <= 1e-6 * sa.max(1.0), "m={} {} vs {}", m, sa, sb);
        }
    }

    #[test]
    fn linear_recon_is_zero_on_its_subspace(train in rows(10..40, 3), coefs in proptest::collection::vec(-5.0..5.0f64, 2)) {
        let fit = fit_linear_recon(&matrix(&train), 2).unwrap();
        let x: Vec<f64> = (0..3)
            .map(|j| fit.mean[j] + coefs[0] * fit.components[0][j] + coefs[1] * fit.components[1][j])
            .collect();
        prop_assert!(fit.score(&x).unwrap() <= 1e-9);
    }
}

#[test]
fn scorers_are_independent_of_outliers() {
    let base = GaussianCaseSpec {
        dim: 3,
        inlier_mean: 0.0,
        inlier_sigma: 1.0,
        outlier_mean: 2.0,
        outlier_sigma: 1.0,
        n_train: Some(200),
        n_inliers: 100,
        n_outliers: 50,
        inlier_error_rate: 0.1,
        seed: 11,
    };
    let other = GaussianCaseSpec { outlier_mean: -7.0, outlier_sigma: 3.0, n_outliers: 400, ..base.clone() };
    let (a, b) = (generate_gaussian_case(&base).unwrap(), generate_gaussian_case(&other).unwrap());
    assert_ne!(a.test, b.test);
    for rule in [RuleConfig::GaussianNll, RuleConfig::Knn { k: 5 }, RuleConfig::LinearRecon { components: 2 }] {
        let fitted = |train: &FeatureMatrix| -> Vec<u8> {
            match rule.build(Some(train)).unwrap() {
                ScoringRule::Fitted(s) => serde_json::to_vec::<FittedScorer>(&s).unwrap(),
                _ => unreachable!("fitted rules only"),
            }
        };
        assert_eq!(fitted(&a.train), fitted(&b.train), "{rule:?}");
    }
}

#[test]
fn softmax_max_on_probability_rows() {
    let p = ProbabilityVector::new(vec![0.7, 0.2, 0.1]).unwrap();
    assert!((softmax_max_score(&p) - 0.3).abs() < 1e-15);
    assert_eq!(softmax_max_score(&ProbabilityVector::new(vec![0.0, 1.0]).unwrap()), 0.0);
}
