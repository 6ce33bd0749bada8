//! End-to-end runs: manifest in, report and plots out.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};

use crate::error::{Error, Result};
use crate::io::{
    emit_plots, parse_manifest, read_correctness_csv, read_feature_csv, read_score_csv, resolve, to_json_g17,
    write_correctness_csv, write_feature_csv, write_report, write_score_csv, CaseInputs, CaseManifest, FeatureSource,
    ReportFile, ScoreFiles,
};
use crate::metrics::{evaluate_case, CaseConfig};
use crate::sample::{validate_samples, SampleSet, ScoredSample};
use crate::supervisors::{score_matrix, FeatureMatrix, RuleConfig};
use crate::synth::{generate_gaussian_case, GaussianCaseSpec};

/// A manifest together with the bytes it was parsed from.
#[derive(Debug, Clone)]
pub struct LoadedManifest {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
    pub manifest: CaseManifest,
    /// Modification time of the manifest file, RFC 3339 UTC. Using the
    /// file's own time keeps reruns over an unchanged manifest identical.
    pub timestamp: String,
}

pub fn load_manifest(path: &Path) -> Result<LoadedManifest> {
    let bytes = fs::read(path).map_err(|e| Error::read(path, e))?;
    let manifest = parse_manifest(&bytes, path)?;
    let modified = fs::metadata(path).and_then(|m| m.modified()).map_err(|e| Error::read(path, e))?;
    let timestamp = DateTime::<Utc>::from(modified).to_rfc3339_opts(SecondsFormat::Secs, true);
    Ok(LoadedManifest { path: path.to_owned(), bytes, manifest, timestamp })
}

/// Reads or generates the scored samples a manifest describes.
pub fn load_samples(loaded: &LoadedManifest) -> Result<SampleSet> {
    let at = |p: &Path| resolve(&loaded.path, p);
    let samples = match &loaded.manifest.inputs {
        CaseInputs::ScoreFiles(ScoreFiles { inliers, outliers }) => {
            let mut samples = read_score_csv(&at(inliers), false)?;
            samples.extend(read_score_csv(&at(outliers), true)?);
            samples
        }
        CaseInputs::Features(src) => score_feature_source(src, &at)?,
        CaseInputs::Synthetic(src) => {
            let case = generate_gaussian_case(&src.spec)?;
            let rule = src.rule.clone().unwrap_or(RuleConfig::Coordinate { index: 0 });
            let scorer = rule.build(Some(&case.train))?;
            score_matrix(&scorer, &case.test, &case.is_outlier, Some(&case.correctness))?
        }
    };
    Ok(validate_samples(samples)?)
}

fn score_feature_source(src: &FeatureSource, at: &dyn Fn(&Path) -> PathBuf) -> Result<Vec<ScoredSample>> {
    let train = src.train.as_deref().map(|p| read_feature_csv(&at(p))).transpose()?;
    let scorer = src.rule.build(train.as_ref())?;
    let inliers = read_feature_csv(&at(&src.inliers))?;
    let outliers = read_feature_csv(&at(&src.outliers))?;

    let flags = match &src.correctness {
        None => None,
        Some(p) => {
            let path = at(p);
            let mut by_id: HashMap<String, bool> = HashMap::new();
            for (id, ok) in read_correctness_csv(&path)? {
                if by_id.insert(id.clone(), ok).is_some() {
                    return Err(Error::InvalidArgument(format!("{}: sample id {id:?} appears twice", path.display())));
                }
            }
            let flags: Vec<Option<bool>> = inliers.row_ids().iter().map(|id| by_id.remove(id)).collect();
            if let Some(stray) = by_id.keys().min() {
                return Err(Error::InvalidArgument(format!(
                    "{}: sample id {stray:?} is not an inlier of this case",
                    path.display()
                )));
            }
            Some(flags)
        }
    };

    let mut samples = score_matrix(&scorer, &inliers, &vec![false; inliers.rows()], flags.as_deref())?;
    samples.extend(score_matrix(&scorer, &outliers, &vec![true; outliers.rows()], None)?);
    Ok(samples)
}

/// Computes the full report for a manifest without touching the filesystem
/// beyond reading inputs.
pub fn evaluate_manifest(loaded: &LoadedManifest) -> Result<ReportFile> {
    let m = &loaded.manifest;
    let set = load_samples(loaded)?;
    let mut config = CaseConfig::new(&m.case_name, &m.supervisor_name);
    config.bin_count = m.bin_count();
    if let Some(b) = m.baseline_accuracy {
        config = config.with_baseline(b);
    }
    let mut report = evaluate_case(&set, &config)?;
    report.thin_curves(m.max_curve_points());
    Ok(ReportFile::new(report, &m.model_id, &loaded.bytes, loaded.timestamp.clone()))
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub report: ReportFile,
    pub out_dir: PathBuf,
    pub written: Vec<PathBuf>,
    pub notices: Vec<String>,
}

/// Evaluates one manifest and writes `report.json`, `table.csv` and the
/// plots into `out`, or into the manifest's `output_dir` when `out` is
/// `None`. Nothing is written unless the evaluation succeeds.
pub fn run_evaluate(manifest_path: &Path, out: Option<&Path>) -> Result<Evaluation> {
    let loaded = load_manifest(manifest_path)?;
    let out_dir = match (out, &loaded.manifest.output_dir) {
        (Some(o), _) => o.to_owned(),
        (None, Some(o)) => resolve(manifest_path, o),
        (None, None) => {
            return Err(Error::InvalidArgument(format!(
                "{}: no output directory; pass --out or set `output_dir`",
                manifest_path.display()
            )))
        }
    };
    let report = evaluate_manifest(&loaded)?;
    let mut written = write_report(&report, &out_dir)?.to_vec();
    let plots = emit_plots(&report.report, &out_dir)?;
    written.extend(plots.written);
    Ok(Evaluation { report, out_dir, written, notices: plots.notices })
}

/// Scores a feature CSV with `rule` (fitted on `train` where needed) and
/// writes a score CSV. Returns the number of rows written.
pub fn run_score(rule: &RuleConfig, train: Option<&Path>, features: &Path, out: &Path) -> Result<usize> {
    let train = train.map(read_feature_csv).transpose()?;
    let scorer = rule.build(train.as_ref())?;
    let matrix = read_feature_csv(features)?;
    let samples = score_matrix(&scorer, &matrix, &vec![false; matrix.rows()], None)?;
    write_score_csv(out, &samples)?;
    Ok(samples.len())
}

pub fn read_case_spec(path: &Path) -> Result<GaussianCaseSpec> {
    let bytes = fs::read(path).map_err(|e| Error::read(path, e))?;
    let de = &mut serde_json::Deserializer::from_slice(&bytes);
    let spec: GaussianCaseSpec = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: path.to_owned(),
        at: e.path().to_string(),
        message: e.into_inner().to_string(),
    })?;
    spec.validate().map_err(|e| Error::Schema { path: path.to_owned(), at: ".".into(), message: e.to_string() })?;
    Ok(spec)
}

/// File names written by [`run_gen_synthetic`].
pub const SYNTHETIC_FILES: [&str; 5] = ["train.csv", "inliers.csv", "outliers.csv", "correctness.csv", "manifest.json"];

/// Materialises a case spec as feature CSVs, a correctness file and a
/// manifest that scores the case with the Gaussian NLL rule.
pub fn run_gen_synthetic(spec_path: &Path, out: &Path) -> Result<Vec<PathBuf>> {
    let spec = read_case_spec(spec_path)?;
    let case = generate_gaussian_case(&spec)?;
    let d = spec.dim;
    let split = spec.n_inliers * d;
    let (ids_in, ids_out) = case.test.row_ids().split_at(spec.n_inliers);
    let (vals_in, vals_out) = case.test.values().split_at(split);
    let inliers = FeatureMatrix::new(ids_in.to_vec(), d, vals_in.to_vec())?;
    let outliers = FeatureMatrix::new(ids_out.to_vec(), d, vals_out.to_vec())?;
    let flags: Vec<(String, bool)> =
        ids_in.iter().cloned().zip(case.correctness.iter().map(|c| c.unwrap_or(true))).collect();

    let manifest = CaseManifest {
        case_name: format!("gaussian-d{d}-seed{}", spec.seed),
        supervisor_name: "gaussian_nll".into(),
        model_id: "synthetic".into(),
        inputs: CaseInputs::Features(FeatureSource {
            train: Some("train.csv".into()),
            inliers: "inliers.csv".into(),
            outliers: "outliers.csv".into(),
            correctness: Some("correctness.csv".into()),
            rule: RuleConfig::GaussianNll,
        }),
        baseline_accuracy: Some(case.inlier_accuracy()),
        bin_count: None,
        output_dir: None,
        max_curve_points: None,
    };

    fs::create_dir_all(out).map_err(|e| Error::write(out, e))?;
    let paths: Vec<PathBuf> = SYNTHETIC_FILES.iter().map(|f| out.join(f)).collect();
    write_feature_csv(&paths[0], &case.train)?;
    write_feature_csv(&paths[1], &inliers)?;
    write_feature_csv(&paths[2], &outliers)?;
    write_correctness_csv(&paths[3], &flags)?;
    let json = to_json_g17(&manifest).map_err(|e| Error::write(&paths[4], std::io::Error::other(e)))?;
    fs::write(&paths[4], json).map_err(|e| Error::write(&paths[4], e))?;
    Ok(paths)
}
