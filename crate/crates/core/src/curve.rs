//! Operating points, curves and score histograms.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Confusion counts realised by flagging every sample with
/// `anomaly_score >= threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub threshold: f64,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl OperatingPoint {
    pub fn tpr(&self) -> f64 {
        self.tp as f64 / (self.tp + self.fn_) as f64
    }

    pub fn fpr(&self) -> f64 {
        self.fp as f64 / (self.fp + self.tn) as f64
    }

    pub fn fnr(&self) -> f64 {
        1.0 - self.tpr()
    }

    pub fn recall(&self) -> f64 {
        self.tpr()
    }

    /// Defined as 1 when nothing is flagged.
    pub fn precision(&self) -> f64 {
        if self.tp + self.fp == 0 {
            1.0
        } else {
            self.tp as f64 / (self.tp + self.fp) as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Roc,
    Pr,
    RiskCoverage,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Roc => "ROC",
            CurveKind::Pr => "PR",
            CurveKind::RiskCoverage => "risk-coverage",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One point of a curve. `t` is the threshold for ROC/PR points and the
/// accepted-sample count for risk-coverage points. The ROC/PR starting
/// point has `t = +inf`, stored as `null` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    #[serde(with = "finite_or_null")]
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint>,
}

impl Curve {
    /// Keeps at most `max_points` points, evenly spaced by index and always
    /// including both ends. `max_points < 2` keeps everything.
    pub fn decimated(&self, max_points: usize) -> Curve {
        let n = self.points.len();
        if max_points < 2 || n <= max_points {
            return self.clone();
        }
        let last = n - 1;
        let slots = max_points - 1;
        let points = (0..=slots).map(|i| self.points[(i * last + slots / 2) / slots]).collect();
        Curve { kind: self.kind, points }
    }
}

/// Equal-width histogram of inlier and outlier scores on shared bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreDistribution {
    pub bin_edges: Vec<f64>,
    pub inlier_counts: Vec<usize>,
    pub outlier_counts: Vec<usize>,
    /// All scores were equal; a single synthetic-width bin holds everything.
    #[serde(default)]
    pub degenerate_range: bool,
}

impl ScoreDistribution {
    pub fn bin_count(&self) -> usize {
        self.inlier_counts.len()
    }
}

mod finite_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}
