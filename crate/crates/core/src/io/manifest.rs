//! Case manifests: one JSON document declaring an inlier/outlier case.
//!
//! Parsing is fail-closed: unknown keys anywhere are rejected, and exactly
//! one input variant must be present.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::DEFAULT_BIN_COUNT;
use crate::supervisors::RuleConfig;
use crate::synth::GaussianCaseSpec;

/// Curves stored in reports are thinned to this many points by default.
pub const DEFAULT_MAX_CURVE_POINTS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseManifest {
    pub case_name: String,
    pub supervisor_name: String,
    /// Identity of the model under supervision; fixed within a use case.
    pub model_id: String,
    pub inputs: CaseInputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_accuracy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bin_count: Option<usize>,
    /// Where `evaluate` writes when no `--out` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Cap on stored curve points; 0 keeps every point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_curve_points: Option<usize>,
}

impl CaseManifest {
    pub fn bin_count(&self) -> usize {
        self.bin_count.unwrap_or(DEFAULT_BIN_COUNT)
    }

    pub fn max_curve_points(&self) -> usize {
        self.max_curve_points.unwrap_or(DEFAULT_MAX_CURVE_POINTS)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInputs", into = "RawInputs")]
pub enum CaseInputs {
    ScoreFiles(ScoreFiles),
    Features(FeatureSource),
    Synthetic(SyntheticSource),
}

/// Precomputed scores, one CSV per class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreFiles {
    pub inliers: PathBuf,
    pub outliers: PathBuf,
}

/// Feature CSVs scored by a built-in rule fitted on `train`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub train: Option<PathBuf>,
    pub inliers: PathBuf,
    pub outliers: PathBuf,
    /// `sample_id,prediction_correct` rows for the inlier test set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correctness: Option<PathBuf>,
    pub rule: RuleConfig,
}

/// Generated in memory. Without a rule, samples are scored by their first
/// coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSource {
    pub spec: GaussianCaseSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleConfig>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    score_files: Option<ScoreFiles>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    features: Option<FeatureSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    synthetic: Option<SyntheticSource>,
}

impl TryFrom<RawInputs> for CaseInputs {
    type Error = String;

    fn try_from(raw: RawInputs) -> Result<Self, String> {
        let present: Vec<&str> = [
            raw.score_files.as_ref().map(|_| "score_files"),
            raw.features.as_ref().map(|_| "features"),
            raw.synthetic.as_ref().map(|_| "synthetic"),
        ]
        .into_iter()
        .flatten()
        .collect();
        match (raw.score_files, raw.features, raw.synthetic) {
            (Some(s), None, None) => Ok(CaseInputs::ScoreFiles(s)),
            (None, Some(f), None) => Ok(CaseInputs::Features(f)),
            (None, None, Some(s)) => Ok(CaseInputs::Synthetic(s)),
            _ => Err(format!(
                "exactly one of `score_files`, `features`, `synthetic` is required, found [{}]",
                present.join(", ")
            )),
        }
    }
}

impl From<CaseInputs> for RawInputs {
    fn from(inputs: CaseInputs) -> Self {
        match inputs {
            CaseInputs::ScoreFiles(s) => RawInputs { score_files: Some(s), ..Default::default() },
            CaseInputs::Features(f) => RawInputs { features: Some(f), ..Default::default() },
            CaseInputs::Synthetic(s) => RawInputs { synthetic: Some(s), ..Default::default() },
        }
    }
}

pub fn read_manifest(path: &Path) -> Result<CaseManifest> {
    let bytes = fs::read(path).map_err(|e| Error::read(path, e))?;
    parse_manifest(&bytes, path)
}

/// Parses and checks a manifest; `path` only labels diagnostics.
pub fn parse_manifest(bytes: &[u8], path: &Path) -> Result<CaseManifest> {
    let schema = |at: &str, message: String| Error::Schema { path: path.to_owned(), at: at.to_owned(), message };
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let manifest: CaseManifest = serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        schema(&at, e.into_inner().to_string())
    })?;

    for (key, value) in [
        ("case_name", &manifest.case_name),
        ("supervisor_name", &manifest.supervisor_name),
        ("model_id", &manifest.model_id),
    ] {
        if value.trim().is_empty() {
            return Err(schema(key, "must not be empty".into()));
        }
    }
    if let Some(b) = manifest.baseline_accuracy {
        if !(0.0..=1.0).contains(&b) {
            return Err(schema("baseline_accuracy", format!("must lie in [0, 1], got {b}")));
        }
    }
    if manifest.bin_count == Some(0) {
        return Err(schema("bin_count", "must be at least 1".into()));
    }
    if let CaseInputs::Synthetic(s) = &manifest.inputs {
        if let Err(Error::InvalidArgument(msg)) = s.spec.validate() {
            return Err(schema("inputs.synthetic.spec", msg));
        }
    }
    Ok(manifest)
}

/// Resolves a manifest-relative path against the manifest's directory.
pub fn resolve(manifest_path: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_owned()
    } else {
        manifest_path.parent().unwrap_or(Path::new("")).join(p)
    }
}
