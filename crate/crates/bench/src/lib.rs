//! Seeded sample sets for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supeval::{validate_samples, SampleSet, ScoredSample};

/// `n` samples, a quarter of them outliers shifted up by one. Scores are
/// quantised to `levels` distinct values when given, to exercise ties.
pub fn random_set(n: usize, levels: Option<u32>, seed: u64) -> SampleSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..n)
        .map(|i| {
            let is_outlier = i % 4 == 0;
            let mut score: f64 = rng.random::<f64>() + if is_outlier { 1.0 } else { 0.0 };
            if let Some(l) = levels {
                score = (score * f64::from(l)).floor();
            }
            ScoredSample {
                sample_id: format!("s{i:07}"),
                anomaly_score: score,
                is_outlier,
                prediction_correct: (!is_outlier).then(|| rng.random::<f64>() < 0.9),
            }
        })
        .collect();
    validate_samples(samples).expect("generated samples are valid")
}
