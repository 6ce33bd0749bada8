use serde::{Deserialize, Serialize};

use crate::curve::{Curve, ScoreDistribution};

/// The seven scalar metrics plus the risk at the smallest coverage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metrics {
    pub auroc: f64,
    pub auprc: f64,
    pub tpr05: f64,
    pub p95: f64,
    pub fnr95: f64,
    /// `None` renders as N/A: no baseline accuracy, or no correctness flags.
    pub cbpl: Option<f64>,
    pub cbfad: f64,
    /// Risk of the single lowest-scored sample (k = 1).
    pub risk_at_min_coverage: Option<f64>,
}

impl Metrics {
    /// The seven metrics in table column order.
    pub fn columns(&self) -> [Option<f64>; 7] {
        [
            Some(self.auroc),
            Some(self.auprc),
            Some(self.tpr05),
            Some(self.p95),
            Some(self.fnr95),
            self.cbpl,
            Some(self.cbfad),
        ]
    }
}

pub const METRIC_COLUMNS: [&str; 7] = ["AUROC", "AUPRC", "TPR05", "P95", "FNR95", "CBPL", "CBFAD"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curves {
    pub roc: Curve,
    pub pr: Curve,
    /// Absent when any inlier lacks a correctness flag.
    pub risk_coverage: Option<Curve>,
    pub distribution: ScoreDistribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleCounts {
    pub inliers: usize,
    pub outliers: usize,
}

/// Everything measured for one (supervisor, case) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsReport {
    pub case_name: String,
    pub supervisor_name: String,
    pub metrics: Metrics,
    pub sample_counts: SampleCounts,
    pub baseline_accuracy: Option<f64>,
    pub curves: Curves,
}

impl MetricsReport {
    /// Caps every curve at `max_points` points; scalar metrics are untouched.
    pub fn thin_curves(&mut self, max_points: usize) {
        self.curves.roc = self.curves.roc.decimated(max_points);
        self.curves.pr = self.curves.pr.decimated(max_points);
        if let Some(rc) = &mut self.curves.risk_coverage {
            *rc = rc.decimated(max_points);
        }
    }
}
