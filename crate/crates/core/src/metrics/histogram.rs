use crate::curve::ScoreDistribution;
use crate::error::{Error, Result};
use crate::sample::SampleSet;

/// Histograms inlier and outlier scores on `bin_count` equal-width bins
/// spanning the pooled score range.
///
/// Bins are half-open `[lo, hi)` except the last, which also includes the
/// maximum. When every score is equal the result is a single bin centred on
/// that score with `degenerate_range` set.
pub fn score_distribution(set: &SampleSet, bin_count: usize) -> Result<ScoreDistribution> {
    if bin_count == 0 {
        return Err(Error::InvalidArgument("bin_count must be at least 1".into()));
    }
    let (min, max) = (set.min_score(), set.max_score());

    if min == max {
        let half = 0.5 * min.abs().max(1.0);
        return Ok(ScoreDistribution {
            bin_edges: vec![min - half, min + half],
            inlier_counts: vec![set.inlier_count()],
            outlier_counts: vec![set.outlier_count()],
            degenerate_range: true,
        });
    }

    let span = max - min;
    let mut bin_edges: Vec<f64> = (0..bin_count).map(|i| min + span * (i as f64 / bin_count as f64)).collect();
    bin_edges.push(max);

    let mut inlier_counts = vec![0; bin_count];
    let mut outlier_counts = vec![0; bin_count];
    for s in set.samples() {
        let v = s.anomaly_score;
        let mut idx = (((v - min) / span) * bin_count as f64) as usize;
        idx = idx.min(bin_count - 1);
        // settle rounding at bin boundaries against the emitted edges
        while idx > 0 && v < bin_edges[idx] {
            idx -= 1;
        }
        while idx + 1 < bin_count && v >= bin_edges[idx + 1] {
            idx += 1;
        }
        if s.is_outlier {
            outlier_counts[idx] += 1;
        } else {
            inlier_counts[idx] += 1;
        }
    }

    Ok(ScoreDistribution { bin_edges, inlier_counts, outlier_counts, degenerate_range: false })
}
