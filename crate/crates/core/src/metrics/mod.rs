//! Diagnostic curves and scalar metrics for a scored sample set.
//!
//! Every sweep treats equal scores as one atomic group, and every
//! threshold metric reads off realisable operating points only (no
//! interpolation between them).

mod histogram;
mod pr;
mod risk;
mod roc;
mod sweep;

pub use histogram::score_distribution;
pub use pr::{auprc, auprc_from_counts, pr_curve, precision_at_recall};
pub use risk::{cbfad, cbpl, risk_coverage_curve, risk_coverage_points, RiskCoveragePoint, RISK_TOLERANCE};
pub use roc::{auroc, auroc_from_counts, fnr_at_fpr, roc_curve, tpr_at_fpr};
pub use sweep::operating_points;

use crate::error::Result;
use crate::report::{Curves, Metrics, MetricsReport, SampleCounts};
use crate::sample::SampleSet;

pub const TPR_FPR_CAP: f64 = 0.05;
pub const PRECISION_RECALL_FLOOR: f64 = 0.95;
pub const FNR_FPR_FLOOR: f64 = 0.95;
pub const DEFAULT_BIN_COUNT: usize = 50;

/// Identity and options for one evaluated case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseConfig {
    pub case_name: String,
    pub supervisor_name: String,
    pub baseline_accuracy: Option<f64>,
    pub bin_count: usize,
}

impl CaseConfig {
    pub fn new(case_name: impl Into<String>, supervisor_name: impl Into<String>) -> Self {
        Self {
            case_name: case_name.into(),
            supervisor_name: supervisor_name.into(),
            baseline_accuracy: None,
            bin_count: DEFAULT_BIN_COUNT,
        }
    }

    pub fn with_baseline(mut self, accuracy: f64) -> Self {
        self.baseline_accuracy = Some(accuracy);
        self
    }
}

/// Computes all four curves and every scalar metric.
///
/// The risk-coverage curve, CBPL and the minimum-coverage risk are left out
/// when any inlier lacks a correctness flag; CBPL is also left out without
/// a baseline accuracy.
pub fn evaluate_case(set: &SampleSet, config: &CaseConfig) -> Result<MetricsReport> {
    if let Some(b) = config.baseline_accuracy {
        roc::check_unit("baseline_accuracy", b)?;
    }
    let points = operating_points(set);
    let roc = roc::roc_from_points(&points);
    let pr = pr::pr_from_points(&points);
    let (auroc, auprc) = (auroc_from_counts(&points), auprc_from_counts(&points));
    drop(points);

    let risk_coverage = if set.has_correctness() { Some(risk_coverage_curve(set)?) } else { None };
    let cbpl = match (&risk_coverage, config.baseline_accuracy) {
        (Some(curve), Some(b)) => Some(cbpl(curve, b)?),
        _ => None,
    };
    let risk_at_min_coverage = risk_coverage.as_ref().and_then(|c| c.points.first()).map(|p| p.y);

    let metrics = Metrics {
        auroc,
        auprc,
        tpr05: tpr_at_fpr(&roc, TPR_FPR_CAP)?,
        p95: precision_at_recall(&pr, PRECISION_RECALL_FLOOR)?,
        fnr95: fnr_at_fpr(&roc, FNR_FPR_FLOOR)?,
        cbpl,
        cbfad: cbfad(set),
        risk_at_min_coverage,
    };

    Ok(MetricsReport {
        case_name: config.case_name.clone(),
        supervisor_name: config.supervisor_name.clone(),
        metrics,
        sample_counts: SampleCounts { inliers: set.inlier_count(), outliers: set.outlier_count() },
        baseline_accuracy: config.baseline_accuracy,
        curves: Curves { roc, pr, risk_coverage, distribution: score_distribution(set, config.bin_count)? },
    })
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    #[test]
    fn separated_case_with_baseline() {
        let set = with_all_correct(separated(6, 4));
        let r = evaluate_case(&set, &CaseConfig::new("sep", "sup").with_baseline(1.0)).unwrap();
        let m = r.metrics;
        assert_eq!((m.auroc, m.auprc, m.tpr05, m.p95, m.fnr95), (1.0, 1.0, 1.0, 1.0, 0.0));
        assert_eq!(m.cbpl, Some(0.6));
        assert_eq!(m.cbfad, 0.6);
        assert_eq!(m.risk_at_min_coverage, Some(0.0));
        assert_eq!(r.sample_counts, SampleCounts { inliers: 6, outliers: 4 });
    }

    #[test]
    fn no_correctness_flags_means_no_risk_metrics() {
        let r = evaluate_case(&separated(3, 3), &CaseConfig::new("vae", "nll").with_baseline(0.9)).unwrap();
        assert_eq!(r.metrics.cbpl, None);
        assert_eq!(r.metrics.risk_at_min_coverage, None);
        assert!(r.curves.risk_coverage.is_none());
    }

    #[test]
    fn no_baseline_means_no_cbpl_but_keeps_curve() {
        let r = evaluate_case(&worked_six(), &CaseConfig::new("c", "s")).unwrap();
        assert_eq!(r.metrics.cbpl, None);
        assert!(r.curves.risk_coverage.is_some());
        assert_eq!(r.metrics.risk_at_min_coverage, Some(0.0));
    }

    #[test]
    fn worked_sets_compose() {
        let r = evaluate_case(&worked_five(), &CaseConfig::new("c", "s")).unwrap();
        let m = r.metrics;
        assert!((m.auroc - 5.0 / 6.0).abs() < 1e-15);
        assert!((m.auprc - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!((m.tpr05, m.p95, m.fnr95), (0.5, 2.0 / 3.0, 0.0));

        let r = evaluate_case(&worked_six(), &CaseConfig::new("c", "s").with_baseline(0.75)).unwrap();
        assert_eq!(r.metrics.cbpl, Some(1.0 / 3.0));
        assert_eq!(r.metrics.cbfad, 0.5);
    }

    #[test]
    fn rejects_out_of_range_baseline() {
        assert!(evaluate_case(&worked_six(), &CaseConfig::new("c", "s").with_baseline(1.2)).is_err());
    }
}
