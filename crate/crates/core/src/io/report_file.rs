//! `report.json` and the `table.csv` comparison matrix.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::numfmt::{fmt_g17, to_json_g17};
use super::scores::csv_writer;
use crate::curve::CurveKind;
use crate::error::{Error, Result};
use crate::report::{MetricsReport, METRIC_COLUMNS};

pub const REPORT_FILE: &str = "report.json";
pub const TABLE_FILE: &str = "table.csv";
pub const TOOL_NAME: &str = "supeval";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        Self { name: TOOL_NAME.into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

/// A [`MetricsReport`] plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub tool: ToolInfo,
    pub model_id: String,
    /// SHA-256 of the manifest bytes, lowercase hex.
    pub manifest_sha256: String,
    /// RFC 3339 UTC.
    pub timestamp: String,
    pub report: MetricsReport,
}

impl ReportFile {
    pub fn new(report: MetricsReport, model_id: &str, manifest_bytes: &[u8], timestamp: String) -> Self {
        Self {
            tool: ToolInfo::current(),
            model_id: model_id.to_owned(),
            manifest_sha256: sha256_hex(manifest_bytes),
            timestamp,
            report,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes `report.json` and a one-row `table.csv` into `dir`, creating it
/// if needed. Returns the two paths.
pub fn write_report(file: &ReportFile, dir: &Path) -> Result<[PathBuf; 2]> {
    fs::create_dir_all(dir).map_err(|e| Error::write(dir, e))?;
    let json_path = dir.join(REPORT_FILE);
    let json = to_json_g17(file).map_err(|e| Error::write(&json_path, io::Error::other(e)))?;
    fs::write(&json_path, json).map_err(|e| Error::write(&json_path, e))?;

    let table_path = dir.join(TABLE_FILE);
    write_table(&table_path, &[&file.report])?;
    Ok([json_path, table_path])
}

/// Reads a report from a `report.json` path or from a directory holding one,
/// checking it against the report contract.
pub fn read_report(path: &Path) -> Result<ReportFile> {
    let path = if path.is_dir() { path.join(REPORT_FILE) } else { path.to_owned() };
    let bytes = fs::read(&path).map_err(|e| Error::read(&path, e))?;
    parse_report(&bytes, &path)
}

pub fn parse_report(bytes: &[u8], path: &Path) -> Result<ReportFile> {
    let schema = |at: &str, message: String| Error::Schema { path: path.to_owned(), at: at.to_owned(), message };
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let file: ReportFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        schema(&at, e.into_inner().to_string())
    })?;

    let r = &file.report;
    let m = &r.metrics;
    for (name, v) in [
        ("auroc", Some(m.auroc)),
        ("auprc", Some(m.auprc)),
        ("tpr05", Some(m.tpr05)),
        ("p95", Some(m.p95)),
        ("fnr95", Some(m.fnr95)),
        ("cbpl", m.cbpl),
        ("cbfad", Some(m.cbfad)),
        ("risk_at_min_coverage", m.risk_at_min_coverage),
    ] {
        if let Some(v) = v {
            if !(0.0..=1.0).contains(&v) {
                return Err(schema(&format!("report.metrics.{name}"), format!("{v} lies outside [0, 1]")));
            }
        }
    }
    if let Some(b) = r.baseline_accuracy {
        if !(0.0..=1.0).contains(&b) {
            return Err(schema("report.baseline_accuracy", format!("{b} lies outside [0, 1]")));
        }
    }
    if m.cbpl.is_some() && (r.baseline_accuracy.is_none() || r.curves.risk_coverage.is_none()) {
        return Err(schema("report.metrics.cbpl", "present without a baseline accuracy and risk curve".into()));
    }
    for (at, curve, kind) in [
        ("report.curves.roc", Some(&r.curves.roc), CurveKind::Roc),
        ("report.curves.pr", Some(&r.curves.pr), CurveKind::Pr),
        ("report.curves.risk_coverage", r.curves.risk_coverage.as_ref(), CurveKind::RiskCoverage),
    ] {
        if let Some(c) = curve {
            if c.kind != kind {
                return Err(schema(at, format!("expected a {kind} curve, found {}", c.kind)));
            }
            if c.points.is_empty() {
                return Err(schema(at, "no points".into()));
            }
        }
    }
    let d = &r.curves.distribution;
    if d.bin_edges.len() != d.inlier_counts.len() + 1 || d.inlier_counts.len() != d.outlier_counts.len() {
        return Err(schema("report.curves.distribution", "bin edges and counts disagree in length".into()));
    }
    if file.manifest_sha256.len() != 64 || !file.manifest_sha256.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(schema("manifest_sha256", "expected 64 hex digits".into()));
    }
    Ok(file)
}

pub fn table_header() -> Vec<&'static str> {
    let mut header = vec!["Supervisor", "Case"];
    header.extend(METRIC_COLUMNS);
    header
}

/// Table row: supervisor, case, then the seven metrics with N/A for absent
/// ones.
pub fn table_row(r: &MetricsReport) -> Vec<String> {
    let mut row = vec![r.supervisor_name.clone(), r.case_name.clone()];
    row.extend(r.metrics.columns().iter().map(|v| v.map_or_else(|| "N/A".to_owned(), fmt_g17)));
    row
}

pub fn render_table<W: io::Write>(w: W, reports: &[&MetricsReport]) -> io::Result<()> {
    let mut wtr = csv_writer(w);
    wtr.write_record(table_header())?;
    for r in reports {
        wtr.write_record(table_row(r))?;
    }
    wtr.flush()
}

pub fn write_table(path: &Path, reports: &[&MetricsReport]) -> Result<()> {
    let mut buf = Vec::new();
    render_table(&mut buf, reports).map_err(|e| Error::write(path, e))?;
    let mut f = fs::File::create(path).map_err(|e| Error::write(path, e))?;
    f.write_all(&buf).map_err(|e| Error::write(path, e))
}
