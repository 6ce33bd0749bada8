//! Evaluation of run-time supervisors (out-of-distribution detectors).
//!
//! A supervisor assigns each input an anomaly score. Given scored inliers and
//! outliers, this crate computes ROC, precision-recall and risk-coverage
//! curves, the score histogram, and seven scalar metrics: AUROC, AUPRC,
//! TPR05, P95, FNR95, CBPL and CBFAD. Outliers are the positive class and a
//! sample is flagged when its score is at least the threshold.
//!
//! ```
//! use supeval::{evaluate_case, validate_samples, CaseConfig, ScoredSample};
//!
//! let set = validate_samples(vec![
//!     ScoredSample::inlier("a", 0.1),
//!     ScoredSample::inlier("b", 0.2),
//!     ScoredSample::inlier("c", 0.3),
//!     ScoredSample::outlier("d", 0.25),
//!     ScoredSample::outlier("e", 0.4),
//! ])?;
//! let report = evaluate_case(&set, &CaseConfig::new("toy", "identity"))?;
//! assert!((report.metrics.auroc - 5.0 / 6.0).abs() < 1e-15);
//! assert_eq!(report.metrics.cbpl, None);
//! # Ok::<(), supeval::Error>(())
//! ```

pub mod curve;
pub mod error;
pub mod io;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod sample;
pub mod supervisors;
pub mod synth;

pub use curve::{Curve, CurveKind, CurvePoint, OperatingPoint, ScoreDistribution};
pub use error::{Error, Issue, Result, ValidationError};
pub use metrics::{evaluate_case, CaseConfig};
pub use report::{Curves, Metrics, MetricsReport, SampleCounts, METRIC_COLUMNS};
pub use sample::{validate_samples, Class, SampleSet, ScoredSample};
