use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, CurveKind, CurvePoint};
use crate::error::{Error, Result};
use crate::sample::{SampleSet, ScoredSample};

use super::roc::check_unit;

/// Slack when comparing a risk ratio with `1 - baseline_accuracy`, which is
/// rarely an exact binary fraction.
pub const RISK_TOLERANCE: f64 = 1e-12;

/// Accepting the `accepted` lowest-scored samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskCoveragePoint {
    pub accepted: usize,
    pub coverage: f64,
    pub risk: f64,
}

/// Acceptance order: ascending score, ties broken by ascending sample id.
fn acceptance_order(set: &SampleSet) -> Vec<&ScoredSample> {
    let mut order: Vec<&ScoredSample> = set.samples().iter().collect();
    order.sort_unstable_by(|a, b| {
        a.anomaly_score
            .partial_cmp(&b.anomaly_score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.sample_id.cmp(&b.sample_id))
    });
    order
}

/// Risk after accepting k = 1..=N samples. Outliers always count as
/// errors; inliers count when their prediction was wrong.
pub fn risk_coverage_points(set: &SampleSet) -> Result<Vec<RiskCoveragePoint>> {
    let n = set.len();
    let mut errors = 0usize;
    acceptance_order(set)
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let is_error = s.is_error().ok_or_else(|| Error::MissingCorrectness { sample_id: s.sample_id.clone() })?;
            errors += usize::from(is_error);
            let k = i + 1;
            Ok(RiskCoveragePoint { accepted: k, coverage: k as f64 / n as f64, risk: errors as f64 / k as f64 })
        })
        .collect()
}

pub fn risk_coverage_curve(set: &SampleSet) -> Result<Curve> {
    let points = risk_coverage_points(set)?
        .into_iter()
        .map(|p| CurvePoint { x: p.coverage, y: p.risk, t: p.accepted as f64 })
        .collect();
    Ok(Curve { kind: CurveKind::RiskCoverage, points })
}

/// Largest coverage whose accepted-set risk does not exceed the model's
/// clean error rate `1 - baseline_accuracy`; 0 when no coverage qualifies.
pub fn cbpl(curve: &Curve, baseline_accuracy: f64) -> Result<f64> {
    if curve.kind != CurveKind::RiskCoverage {
        return Err(Error::MalformedCurve { kind: "risk-coverage", reason: format!("got a {} curve", curve.kind) });
    }
    check_unit("baseline_accuracy", baseline_accuracy)?;
    let target = 1.0 - baseline_accuracy + RISK_TOLERANCE;
    Ok(curve.points.iter().filter(|p| p.y <= target).map(|p| p.x).fold(0.0, f64::max))
}

/// Fraction of samples scoring strictly below the lowest outlier score.
pub fn cbfad(set: &SampleSet) -> f64 {
    let min_outlier =
        set.samples().iter().filter(|s| s.is_outlier).map(|s| s.anomaly_score).fold(f64::INFINITY, f64::min);
    let below = set.samples().iter().filter(|s| s.anomaly_score < min_outlier).count();
    below as f64 / set.len() as f64
}
