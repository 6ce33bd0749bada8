use std::cmp::Ordering;

use crate::curve::OperatingPoint;
use crate::sample::SampleSet;

/// Every realisable operating point, from "flag nothing" (threshold +inf)
/// down to "flag everything" (threshold = minimum score).
///
/// Samples sharing a score form one tie group and cross the threshold
/// together, so there is exactly one point per distinct score plus the
/// initial empty-flag point. Runs in O(N log N).
pub fn operating_points(set: &SampleSet) -> Vec<OperatingPoint> {
    let mut scored: Vec<(f64, bool)> = set.samples().iter().map(|s| (s.anomaly_score, s.is_outlier)).collect();
    // Scores are finite in a validated set.
    scored.sort_unstable_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));

    let positives = set.outlier_count();
    let negatives = set.inlier_count();
    let mut points = Vec::with_capacity(scored.len() + 1);
    points.push(OperatingPoint { threshold: f64::INFINITY, tp: 0, fp: 0, tn: negatives, fn_: positives });

    let (mut tp, mut fp) = (0, 0);
    let mut i = 0;
    while i < scored.len() {
        let threshold = scored[i].0;
        while i < scored.len() && scored[i].0 == threshold {
            if scored[i].1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push(OperatingPoint { threshold, tp, fp, tn: negatives - fp, fn_: positives - tp });
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{validate_samples, ScoredSample};

    #[test]
    fn tie_groups_move_together() {
        let set = validate_samples(vec![
            ScoredSample::inlier("a", 0.5),
            ScoredSample::outlier("b", 0.5),
            ScoredSample::inlier("c", 0.1),
        ])
        .unwrap();
        let pts = operating_points(&set);
        assert_eq!(pts.len(), 3);
        assert_eq!((pts[1].tp, pts[1].fp), (1, 1));
        assert_eq!(pts[1].threshold, 0.5);
        assert_eq!((pts[2].tp, pts[2].fp, pts[2].tn, pts[2].fn_), (1, 2, 0, 0));
    }
}
