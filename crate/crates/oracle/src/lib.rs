//! Slow, obviously-correct reference computations for cross-checking the
//! metrics in `supeval`. Everything here rescans the whole sample list per
//! threshold or per pair; none of it reuses the library's sweep code.

use supeval::ScoredSample;

/// Flagging counts at one threshold, found by scanning every sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counts {
    pub threshold: f64,
    pub tp: usize,
    pub fp: usize,
    pub positives: usize,
    pub negatives: usize,
}

impl Counts {
    pub fn tpr(&self) -> f64 {
        self.tp as f64 / self.positives as f64
    }

    pub fn fpr(&self) -> f64 {
        self.fp as f64 / self.negatives as f64
    }

    pub fn precision(&self) -> f64 {
        if self.tp + self.fp == 0 {
            1.0
        } else {
            self.tp as f64 / (self.tp + self.fp) as f64
        }
    }
}

pub fn counts_at(samples: &[ScoredSample], threshold: f64) -> Counts {
    let mut c = Counts { threshold, tp: 0, fp: 0, positives: 0, negatives: 0 };
    for s in samples {
        let flagged = s.anomaly_score >= threshold;
        if s.is_outlier {
            c.positives += 1;
            c.tp += usize::from(flagged);
        } else {
            c.negatives += 1;
            c.fp += usize::from(flagged);
        }
    }
    c
}

/// `+inf` followed by every distinct score, highest first.
pub fn thresholds(samples: &[ScoredSample]) -> Vec<f64> {
    let mut ts = vec![f64::INFINITY];
    for s in samples {
        if !ts.contains(&s.anomaly_score) {
            ts.push(s.anomaly_score);
        }
    }
    ts.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ts
}

pub fn all_counts(samples: &[ScoredSample]) -> Vec<Counts> {
    thresholds(samples).into_iter().map(|t| counts_at(samples, t)).collect()
}

/// Probability that a random outlier outscores a random inlier, ties
/// counting one half, by enumerating every pair.
pub fn auroc(samples: &[ScoredSample]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for o in samples.iter().filter(|s| s.is_outlier) {
        for i in samples.iter().filter(|s| !s.is_outlier) {
            pairs += 1.0;
            if o.anomaly_score > i.anomaly_score {
                wins += 1.0;
            } else if o.anomaly_score == i.anomaly_score {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

/// Mean over outliers of the precision obtained when the threshold is that
/// outlier's own score.
pub fn auprc(samples: &[ScoredSample]) -> f64 {
    let outliers: Vec<&ScoredSample> = samples.iter().filter(|s| s.is_outlier).collect();
    let total: f64 = outliers.iter().map(|o| counts_at(samples, o.anomaly_score).precision()).sum();
    total / outliers.len() as f64
}

pub fn tpr_at_fpr(samples: &[ScoredSample], cap: f64) -> f64 {
    all_counts(samples).iter().filter(|c| c.fpr() <= cap).map(Counts::tpr).fold(0.0, f64::max)
}

pub fn precision_at_recall(samples: &[ScoredSample], floor: f64) -> f64 {
    all_counts(samples).iter().filter(|c| c.tpr() >= floor).map(Counts::precision).fold(0.0, f64::max)
}

/// `1 - tpr` at the smallest FPR reaching `floor`, taking the best TPR when
/// several thresholds share that FPR.
pub fn fnr_at_fpr(samples: &[ScoredSample], floor: f64) -> f64 {
    let all = all_counts(samples);
    let qualifying: Vec<&Counts> = all.iter().filter(|c| c.fpr() >= floor).collect();
    let best_fpr = qualifying.iter().map(|c| c.fpr()).fold(f64::INFINITY, f64::min);
    let best_tpr = qualifying.iter().filter(|c| c.fpr() == best_fpr).map(|c| c.tpr()).fold(0.0, f64::max);
    1.0 - best_tpr
}

/// Position of each sample in ascending (score, sample_id) order, by
/// counting how many samples precede it.
fn ranks(samples: &[ScoredSample]) -> Vec<usize> {
    samples
        .iter()
        .map(|a| {
            samples
                .iter()
                .filter(|b| {
                    b.anomaly_score < a.anomaly_score
                        || (b.anomaly_score == a.anomaly_score && b.sample_id < a.sample_id)
                })
                .count()
        })
        .collect()
}

fn is_error(s: &ScoredSample) -> bool {
    s.is_outlier || s.prediction_correct == Some(false)
}

/// `(coverage, risk)` for k = 1..=N accepted lowest-scored samples.
/// Every inlier must carry a correctness flag.
pub fn risk_coverage(samples: &[ScoredSample]) -> Vec<(f64, f64)> {
    assert!(samples.iter().all(|s| s.is_outlier || s.prediction_correct.is_some()));
    let rank = ranks(samples);
    let n = samples.len();
    (1..=n)
        .map(|k| {
            let errors = samples.iter().zip(&rank).filter(|(s, &r)| r < k && is_error(s)).count();
            (k as f64 / n as f64, errors as f64 / k as f64)
        })
        .collect()
}

pub fn cbpl(samples: &[ScoredSample], baseline_accuracy: f64) -> f64 {
    let limit = 1.0 - baseline_accuracy + 1e-12;
    risk_coverage(samples).into_iter().filter(|&(_, r)| r <= limit).map(|(c, _)| c).fold(0.0, f64::max)
}

/// Fraction of samples scored strictly below every outlier.
pub fn cbfad(samples: &[ScoredSample]) -> f64 {
    let below = samples
        .iter()
        .filter(|s| samples.iter().filter(|o| o.is_outlier).all(|o| s.anomaly_score < o.anomaly_score))
        .count();
    below as f64 / samples.len() as f64
}

/// Per-bin counts for the given edges: bins are `[lo, hi)` except the last,
/// which is closed.
pub fn histogram(scores: &[f64], edges: &[f64]) -> Vec<usize> {
    let bins = edges.len() - 1;
    let mut counts = vec![0; bins];
    for &v in scores {
        for b in 0..bins {
            let last = b == bins - 1;
            if v >= edges[b] && (v < edges[b + 1] || (last && v <= edges[b + 1])) {
                counts[b] += 1;
                break;
            }
        }
    }
    counts
}
