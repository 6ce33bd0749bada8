//! Reports and manifests validate against the JSON schemas shipped in
//! `schemas/`, and the strict parsers agree with them.

use std::path::{Path, PathBuf};

use serde_json::Value;
use supeval::io::{parse_manifest, to_json_g17, ReportFile};
use supeval::synth::GaussianCaseSpec;
use supeval::{evaluate_case, validate_samples, CaseConfig, ScoredSample};

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&value).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn reports() -> Vec<ReportFile> {
    let flagged = |id: &str, s: f64, ok: bool| ScoredSample::inlier(id, s).with_correctness(ok);
    let cases = [
        (vec![ScoredSample::inlier("a", 0.1), ScoredSample::outlier("b", 0.9)], None),
        (vec![flagged("a", 0.1, true), flagged("b", 0.5, false), ScoredSample::outlier("c", 0.4)], Some(0.75)),
        (vec![flagged("a", 1.0, true), ScoredSample::outlier("b", 1.0)], Some(1.0)),
        (
            (0..300)
                .map(|i| {
                    let s = f64::from(i % 17) * 0.37 - 2.0;
                    if i % 3 == 0 {
                        ScoredSample::outlier(format!("o{i}"), s + 1.0)
                    } else {
                        flagged(&format!("i{i}"), s, i % 7 != 0)
                    }
                })
                .collect(),
            Some(0.9),
        ),
    ];
    cases
        .into_iter()
        .map(|(samples, baseline)| {
            let mut cfg = CaseConfig::new("case", "sup");
            cfg.baseline_accuracy = baseline;
            let mut r = evaluate_case(&validate_samples(samples).unwrap(), &cfg).unwrap();
            r.thin_curves(40);
            ReportFile::new(r, "model", b"manifest", "2024-01-01T00:00:00Z".into())
        })
        .collect()
}

#[test]
fn reports_are_schema_valid() {
    let v = schema("report.schema.json");
    for r in reports() {
        let doc: Value = serde_json::from_slice(&to_json_g17(&r).unwrap()).unwrap();
        assert_valid(&v, &doc);
    }
}

#[test]
fn schema_rejects_broken_reports() {
    let v = schema("report.schema.json");
    let good: Value = serde_json::from_slice(&to_json_g17(&reports()[1]).unwrap()).unwrap();
    let mut extra = good.clone();
    extra["report"]["metrics"]["bogus"] = Value::from(1);
    assert!(!v.is_valid(&extra));
    let mut out_of_range = good.clone();
    out_of_range["report"]["metrics"]["auroc"] = Value::from(1.5);
    assert!(!v.is_valid(&out_of_range));
    let mut bad_hash = good;
    bad_hash["manifest_sha256"] = Value::from("xyz");
    assert!(!v.is_valid(&bad_hash));
}

fn manifest(inputs: Value) -> Value {
    serde_json::json!({
        "case_name": "c", "supervisor_name": "s", "model_id": "m",
        "inputs": inputs, "baseline_accuracy": 0.9, "bin_count": 20
    })
}

#[test]
fn manifest_parser_and_schema_agree() {
    let v = schema("manifest.schema.json");
    let spec = serde_json::to_value(GaussianCaseSpec::one_d(2.0, 1.0, 100, 3)).unwrap();
    let score_files = serde_json::json!({"score_files": {"inliers": "a.csv", "outliers": "b.csv"}});
    let good = [
        manifest(score_files.clone()),
        manifest(serde_json::json!({"synthetic": {"spec": spec.clone()}})),
        manifest(serde_json::json!({"synthetic": {"spec": spec.clone(), "rule": {"kind": "knn", "k": 3}}})),
        manifest(serde_json::json!({"features": {"train": "t.csv", "inliers": "a.csv", "outliers": "b.csv",
            "correctness": "c.csv", "rule": {"kind": "linear_recon", "components": 2}}})),
        manifest(serde_json::json!({"features": {"inliers": "a.csv", "outliers": "b.csv",
            "rule": {"kind": "coordinate", "index": 1}}})),
    ];
    let mut both = score_files.clone();
    both["synthetic"] = serde_json::json!({"spec": spec});
    let mut typo = manifest(score_files.clone());
    typo["bin_cout"] = Value::from(3);
    let mut out_of_range = manifest(score_files.clone());
    out_of_range["baseline_accuracy"] = Value::from(1.2);
    let bad = [
        manifest(both),
        manifest(serde_json::json!({})),
        typo,
        out_of_range,
        manifest(serde_json::json!({"features": {"inliers": "a.csv", "outliers": "b.csv", "rule": {"kind": "knn"}}})),
        manifest(serde_json::json!({"score_files": {"inliers": "a.csv"}})),
    ];
    let parses = |doc: &Value| parse_manifest(doc.to_string().as_bytes(), Path::new("m.json")).is_ok();
    for doc in &good {
        assert_valid(&v, doc);
        assert!(parses(doc), "{doc}");
    }
    for doc in &bad {
        assert!(!v.is_valid(doc), "schema accepted {doc}");
        assert!(!parses(doc), "parser accepted {doc}");
    }
}
