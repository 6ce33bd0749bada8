use crate::error::{Error, Result};

/// Tolerance on the sum of a probability vector.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-6;

/// Class probabilities: nonnegative, summing to one within
/// [`PROBABILITY_SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::NotAProbability("empty vector".into()));
        }
        if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::NotAProbability(format!("entry {bad} is not a nonnegative number")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::NotAProbability(format!("entries sum to {sum}")));
        }
        Ok(Self(p))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Exponential normalisation with max subtraction, so large logits do not
/// overflow.
pub fn softmax(logits: &[f64]) -> Result<ProbabilityVector> {
    if logits.is_empty() || logits.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("softmax needs a non-empty vector of finite logits".into()));
    }
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|v| (v - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    ProbabilityVector::new(exps.into_iter().map(|e| e / total).collect())
}

/// `1 - max_i p_i`: zero for a one-hot prediction, `1 - 1/D` for a uniform
/// one.
pub fn softmax_max_score(p: &ProbabilityVector) -> f64 {
    let max = p.as_slice().iter().copied().fold(0.0, f64::max);
    (1.0 - max).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn score(p: &[f64]) -> f64 {
        softmax_max_score(&ProbabilityVector::new(p.to_vec()).unwrap())
    }

    #[test]
    fn score_examples() {
        assert_eq!(score(&[1.0, 0.0, 0.0]), 0.0);
        assert_eq!(score(&[0.25; 4]), 0.75);
        assert!((score(&[0.7, 0.2, 0.1]) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_probabilities() {
        assert!(matches!(ProbabilityVector::new(vec![0.5, 0.6]), Err(Error::NotAProbability(_))));
        assert!(matches!(ProbabilityVector::new(vec![1.5, -0.5]), Err(Error::NotAProbability(_))));
        assert!(ProbabilityVector::new(vec![0.5, 0.5 + 5e-7]).is_ok());
    }

    #[test]
    fn softmax_examples() {
        assert_eq!(softmax(&[0.0, 0.0]).unwrap().as_slice(), &[0.5, 0.5]);
        let p = softmax(&[1000.0, 0.0]).unwrap();
        assert!((p.as_slice()[0] - 1.0).abs() < 1e-12 && p.as_slice()[1].abs() < 1e-12);
        // e^{ln 2} / (e^{ln 2} + 1) = 2/3
        let p = softmax(&[2f64.ln(), 0.0]).unwrap();
        assert!((p.as_slice()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.as_slice()[1] - 1.0 / 3.0).abs() < 1e-15);
    }
}
