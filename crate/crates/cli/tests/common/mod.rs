#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn supeval(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supeval")).args(args).current_dir(cwd).output().unwrap()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    if let Some(parent) = p.parent() {
        fs::create_dir_all(parent).unwrap();
    }
    fs::write(&p, text).unwrap();
    p
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

/// Asserts that `report.json` in `dir` satisfies the shipped report schema.
pub fn assert_schema_valid(dir: &Path) -> Value {
    let schema_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.schema.json");
    let validator = jsonschema::validator_for(&read_json(&schema_path)).unwrap();
    let doc = read_json(&dir.join("report.json"));
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
    doc
}

/// The five-sample score files: inliers 0.1, 0.2, 0.3; outliers 0.25, 0.4.
pub fn five_sample_case(dir: &Path, baseline: Option<f64>) -> PathBuf {
    write(dir, "in.csv", "sample_id,anomaly_score\na,0.1\nb,0.2\nc,0.3\n");
    write(dir, "out.csv", "sample_id,anomaly_score\nd,0.25\ne,0.4\n");
    let baseline = baseline.map_or(String::new(), |b| format!(r#", "baseline_accuracy": {b}"#));
    write(
        dir,
        "five.json",
        &format!(
            r#"{{"case_name": "five", "supervisor_name": "identity", "model_id": "toy",
                "inputs": {{"score_files": {{"inliers": "in.csv", "outliers": "out.csv"}}}}{baseline}}}"#
        ),
    )
}

pub fn synthetic_manifest(dir: &Path, name: &str, per_class: usize, seed: u64) -> PathBuf {
    write(
        dir,
        name,
        &format!(
            r#"{{"case_name": "gauss-{seed}", "supervisor_name": "coordinate", "model_id": "none",
                "inputs": {{"synthetic": {{"spec": {{"dim": 1, "inlier_mean": 0.0, "inlier_sigma": 1.0,
                "outlier_mean": 2.0, "outlier_sigma": 1.0, "n_inliers": {per_class}, "n_outliers": {per_class},
                "inlier_error_rate": 0.1, "seed": {seed}}}}}}}, "baseline_accuracy": 0.9}}"#
        ),
    )
}

/// Standard normal CDF by composite Simpson integration of the density.
pub fn phi(x: f64) -> f64 {
    let n = 20_000;
    let h = x / n as f64;
    let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let inner: f64 = (1..n).map(|i| pdf(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    0.5 + h / 3.0 * (pdf(0.0) + inner + pdf(x))
}
