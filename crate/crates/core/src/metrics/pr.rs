use crate::curve::{Curve, CurveKind, CurvePoint, OperatingPoint};
use crate::error::{Error, Result};
use crate::sample::SampleSet;

use super::roc::check_unit;
use super::sweep::operating_points;

/// Precision-recall curve as (recall, precision, threshold), starting at the
/// empty-flag point (0, 1) and ending at the all-flagged point.
pub fn pr_curve(set: &SampleSet) -> Curve {
    pr_from_points(&operating_points(set))
}

pub(crate) fn pr_from_points(points: &[OperatingPoint]) -> Curve {
    Curve {
        kind: CurveKind::Pr,
        points: points.iter().map(|p| CurvePoint { x: p.recall(), y: p.precision(), t: p.threshold }).collect(),
    }
}

fn check_pr(curve: &Curve) -> Result<()> {
    let malformed = |reason: &str| Error::MalformedCurve { kind: "PR", reason: reason.to_owned() };
    if curve.kind != CurveKind::Pr {
        return Err(malformed(&format!("got a {} curve", curve.kind)));
    }
    match curve.points.last() {
        None => return Err(malformed("no points")),
        Some(last) if last.x != 1.0 => return Err(malformed("must end at recall 1")),
        _ => {}
    }
    if curve.points.windows(2).any(|w| w[1].x < w[0].x) {
        return Err(malformed("recall must be nondecreasing"));
    }
    Ok(())
}

/// Average precision: the sum of recall increments times the precision
/// reached at each step. No interpolation between points.
pub fn auprc(curve: &Curve) -> Result<f64> {
    check_pr(curve)?;
    let mut prev_recall = 0.0;
    let mut area = 0.0;
    for p in &curve.points {
        area += (p.x - prev_recall) * p.y;
        prev_recall = p.x;
    }
    Ok(area.clamp(0.0, 1.0))
}

/// [`auprc`] from the integer confusion counts of a full sweep.
///
/// Each step contributes `dtp * tp / (tp + fp)`; the terms and their
/// rounding errors are accumulated in double-double arithmetic and divided
/// by the outlier count once, so the result does not depend on summation
/// order and is correctly rounded in all but pathological cases.
pub fn auprc_from_counts(points: &[OperatingPoint]) -> f64 {
    let Some(last) = points.last() else {
        return f64::NAN;
    };
    let (mut hi, mut lo) = (0.0_f64, 0.0_f64);
    let mut prev_tp = 0;
    for p in points {
        let dtp = p.tp - prev_tp;
        prev_tp = p.tp;
        if dtp == 0 {
            continue;
        }
        let n = (dtp as f64) * (p.tp as f64);
        let d = (p.tp + p.fp) as f64;
        let q = n / d;
        let r = (-q).mul_add(d, n) / d;
        let (s, e) = two_sum(hi, q);
        hi = s;
        lo += e + r;
    }
    let total = last.tp as f64;
    let q = hi / total;
    let rem = (-q).mul_add(total, hi) + lo;
    (q + rem / total).clamp(0.0, 1.0)
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Best precision among realisable thresholds whose recall is at least
/// `recall_floor`.
pub fn precision_at_recall(curve: &Curve, recall_floor: f64) -> Result<f64> {
    check_pr(curve)?;
    check_unit("recall_floor", recall_floor)?;
    Ok(curve.points.iter().filter(|p| p.x >= recall_floor).map(|p| p.y).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::testing::*;

    #[test]
    fn count_based_area_is_correctly_rounded() {
        let points = operating_points(&worked_five());
        assert_eq!(auprc_from_counts(&points), 5.0 / 6.0);
        assert!((auprc_from_counts(&points) - auprc(&pr_from_points(&points)).unwrap()).abs() < 1e-15);
        // 1/3 + 1/3 + 1/3 summed naively is not 1.
        let thirds = operating_points(&set_of(&[0.9, 0.9, 0.8, 0.8, 0.7, 0.7], &[0.9, 0.8, 0.7]));
        assert_eq!(auprc_from_counts(&thirds), 1.0 / 3.0);
    }

    #[test]
    fn worked_example_precisions_at_full_recall() {
        let c = pr_curve(&worked_five());
        let at_full: Vec<(f64, f64)> = c.points.iter().filter(|p| p.x == 1.0).map(|p| (p.t, p.y)).collect();
        // thresholds 0.25, 0.2, 0.1 -> 2/3, 2/4, 2/5
        assert_eq!(at_full, vec![(0.25, 2.0 / 3.0), (0.2, 0.5), (0.1, 0.4)]);
        assert_eq!((c.points[0].x, c.points[0].y), (0.0, 1.0));
        assert_eq!(c.points[0].t, f64::INFINITY);
    }

    #[test]
    fn auprc_examples() {
        assert!((auprc(&pr_curve(&worked_five())).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(auprc(&pr_curve(&separated(3, 2))).unwrap(), 1.0);
        assert!((auprc(&pr_curve(&all_tied(3, 2))).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn p95_examples() {
        assert_eq!(precision_at_recall(&pr_curve(&worked_five()), 0.95).unwrap(), 2.0 / 3.0);
        assert_eq!(precision_at_recall(&pr_curve(&separated(3, 2)), 0.95).unwrap(), 1.0);
        assert_eq!(precision_at_recall(&pr_curve(&all_tied(3, 2)), 0.95).unwrap(), 0.4);
    }

    #[test]
    fn separated_reaches_precision_one_at_full_recall() {
        let c = pr_curve(&separated(3, 2));
        assert!(c.points.iter().any(|p| p.x == 1.0 && p.y == 1.0));
    }
}
