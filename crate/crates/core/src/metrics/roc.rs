use crate::curve::{Curve, CurveKind, CurvePoint, OperatingPoint};
use crate::error::{Error, Result};
use crate::sample::SampleSet;

use super::sweep::operating_points;

/// ROC curve as (fpr, tpr, threshold), from (0,0) to (1,1).
pub fn roc_curve(set: &SampleSet) -> Curve {
    roc_from_points(&operating_points(set))
}

pub(crate) fn roc_from_points(points: &[OperatingPoint]) -> Curve {
    Curve {
        kind: CurveKind::Roc,
        points: points.iter().map(|p| CurvePoint { x: p.fpr(), y: p.tpr(), t: p.threshold }).collect(),
    }
}

fn check_roc(curve: &Curve) -> Result<()> {
    let malformed = |reason: &str| Error::MalformedCurve { kind: "ROC", reason: reason.to_owned() };
    if curve.kind != CurveKind::Roc {
        return Err(malformed(&format!("got a {} curve", curve.kind)));
    }
    let (Some(first), Some(last)) = (curve.points.first(), curve.points.last()) else {
        return Err(malformed("no points"));
    };
    if (first.x, first.y) != (0.0, 0.0) || (last.x, last.y) != (1.0, 1.0) {
        return Err(malformed("must run from (0,0) to (1,1)"));
    }
    if curve.points.windows(2).any(|w| w[1].x < w[0].x || (w[1].x == w[0].x && w[1].y < w[0].y)) {
        return Err(malformed("points out of order"));
    }
    Ok(())
}

/// Trapezoidal area under the ROC curve.
///
/// On a tie-grouped curve this is the Mann-Whitney probability that a
/// random outlier outscores a random inlier, ties counting one half.
pub fn auroc(curve: &Curve) -> Result<f64> {
    check_roc(curve)?;
    let area = curve.points.windows(2).map(|w| (w[1].x - w[0].x) * (w[0].y + w[1].y) * 0.5).sum::<f64>();
    Ok(area.clamp(0.0, 1.0))
}

/// [`auroc`] from the integer confusion counts of a full sweep, with a
/// single rounding at the end.
pub fn auroc_from_counts(points: &[OperatingPoint]) -> f64 {
    let (Some(first), Some(last)) = (points.first(), points.last()) else {
        return f64::NAN;
    };
    debug_assert_eq!((first.tp, first.fp), (0, 0));
    // Twice the area in units of one (inlier, outlier) pair.
    let twice: u128 = points.windows(2).map(|w| (w[1].fp - w[0].fp) as u128 * (w[0].tp + w[1].tp) as u128).sum();
    let pairs = 2 * (last.tp as u128) * (last.fp as u128);
    twice as f64 / pairs as f64
}

/// Best TPR among realisable thresholds whose FPR is at most `fpr_cap`.
pub fn tpr_at_fpr(curve: &Curve, fpr_cap: f64) -> Result<f64> {
    check_roc(curve)?;
    check_unit("fpr_cap", fpr_cap)?;
    Ok(curve.points.iter().filter(|p| p.x <= fpr_cap).map(|p| p.y).fold(0.0, f64::max))
}

/// FNR at the realisable threshold with the smallest FPR not below
/// `fpr_floor`, preferring the highest TPR among equal FPRs.
pub fn fnr_at_fpr(curve: &Curve, fpr_floor: f64) -> Result<f64> {
    check_roc(curve)?;
    check_unit("fpr_floor", fpr_floor)?;
    let best = curve
        .points
        .iter()
        .filter(|p| p.x >= fpr_floor)
        .min_by(|a, b| a.x.total_cmp(&b.x).then(b.y.total_cmp(&a.y)))
        .expect("the (1,1) end point always qualifies");
    Ok(1.0 - best.y)
}

pub(crate) fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must lie in [0, 1], got {v}")))
    }
}
