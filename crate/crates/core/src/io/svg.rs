//! Plain SVG 1.1 charts. Coordinates are printed with two decimals so the
//! output is a pure function of the report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::curve::{Curve, ScoreDistribution};
use crate::error::{Error, Result};
use crate::report::MetricsReport;

pub const ROC_FILE: &str = "roc.svg";
pub const PR_FILE: &str = "pr.svg";
pub const DISTRIBUTION_FILE: &str = "distribution.svg";
pub const RISK_COVERAGE_FILE: &str = "risk_coverage.svg";

/// Polylines are thinned to at most this many vertices.
pub const MAX_PLOT_POINTS: usize = 2000;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

const INLIER_COLOUR: &str = "#1f77b4";
const OUTLIER_COLOUR: &str = "#d62728";

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct PlotOutput {
    pub written: Vec<PathBuf>,
    pub notices: Vec<String>,
}

/// Maps data coordinates onto the plot area.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    pub fn unit() -> Self {
        Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 }
    }

    pub fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    pub fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }

    /// `"x,y"` pixel pair as printed in the SVG.
    pub fn point(&self, x: f64, y: f64) -> String {
        format!("{:.2},{:.2}", self.px(x), self.py(y))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn open(svg: &mut String, title: &str, x_label: &str, y_label: &str, frame: &Frame, x_ticks: &[f64]) {
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">
<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{:.2}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (l, r) = (frame.px(frame.x0), frame.px(frame.x1));
    let (b, t) = (frame.py(frame.y0), frame.py(frame.y1));
    let _ = writeln!(
        svg,
        r#"<rect x="{l:.2}" y="{t:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        r - l,
        b - t
    );
    for &x in x_ticks {
        let px = frame.px(x);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{b:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            b + 4.0,
            b + 16.0,
            tick(x)
        );
    }
    for i in 0..=4 {
        let y = frame.y0 + (frame.y1 - frame.y0) * f64::from(i) / 4.0;
        let py = frame.py(y);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{l:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            l - 4.0,
            l - 6.0,
            py + 4.0,
            tick(y)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>
<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">{}</text>"#,
        (l + r) / 2.0,
        HEIGHT - 12.0,
        escape(x_label),
        (t + b) / 2.0,
        (t + b) / 2.0,
        escape(y_label)
    );
}

fn close(svg: &mut String) {
    svg.push_str("</svg>\n");
}

fn polyline(svg: &mut String, frame: &Frame, curve: &Curve, colour: &str) {
    let thin = curve.decimated(MAX_PLOT_POINTS);
    let pts: Vec<String> = thin.points.iter().map(|p| frame.point(p.x, p.y)).collect();
    let _ = writeln!(svg, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
}

const UNIT_TICKS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

fn curve_plot(title: &str, x_label: &str, y_label: &str, curve: &Curve, diagonal: bool) -> String {
    let frame = Frame::unit();
    let mut svg = String::new();
    open(&mut svg, title, x_label, y_label, &frame, &UNIT_TICKS);
    if diagonal {
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999999" stroke-dasharray="4 3"/>"##,
            frame.px(0.0),
            frame.py(0.0),
            frame.px(1.0),
            frame.py(1.0)
        );
    }
    polyline(&mut svg, &frame, curve, INLIER_COLOUR);
    close(&mut svg);
    svg
}

pub fn roc_svg(r: &MetricsReport) -> String {
    let title = format!("ROC: {} on {} (AUROC {:.4})", r.supervisor_name, r.case_name, r.metrics.auroc);
    curve_plot(&title, "false positive rate", "true positive rate", &r.curves.roc, true)
}

pub fn pr_svg(r: &MetricsReport) -> String {
    let title = format!("PR: {} on {} (AUPRC {:.4})", r.supervisor_name, r.case_name, r.metrics.auprc);
    curve_plot(&title, "recall", "precision", &r.curves.pr, false)
}

pub fn risk_coverage_svg(r: &MetricsReport, curve: &Curve) -> String {
    let title = format!("Risk-coverage: {} on {}", r.supervisor_name, r.case_name);
    let mut svg = curve_plot(&title, "coverage", "risk", curve, false);
    if let Some(b) = r.baseline_accuracy {
        let frame = Frame::unit();
        let line = format!(
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#2ca02c" stroke-dasharray="6 3"/>
"##,
            frame.px(0.0),
            frame.px(1.0),
            y = frame.py(1.0 - b)
        );
        svg.insert_str(svg.len() - "</svg>\n".len(), &line);
    }
    svg
}

/// Overlaid histograms, each class normalised to fractions of its own size.
pub fn distribution_svg(r: &MetricsReport) -> String {
    let d: &ScoreDistribution = &r.curves.distribution;
    let lo = d.bin_edges[0];
    let hi = d.bin_edges[d.bin_edges.len() - 1];
    let frac = |counts: &[usize]| -> Vec<f64> {
        let total: usize = counts.iter().sum();
        counts.iter().map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 }).collect()
    };
    let inl = frac(&d.inlier_counts);
    let out = frac(&d.outlier_counts);
    let top = inl.iter().chain(&out).copied().fold(0.0_f64, f64::max);
    let top = if top > 0.0 { top } else { 1.0 };
    let frame = Frame { x0: lo, x1: hi, y0: 0.0, y1: top };
    let ticks: Vec<f64> = (0..=4).map(|i| lo + (hi - lo) * f64::from(i) / 4.0).collect();

    let mut svg = String::new();
    let title = format!("Score distribution: {} on {}", r.supervisor_name, r.case_name);
    open(&mut svg, &title, "anomaly score", "fraction of class", &frame, &ticks);
    for (values, colour) in [(&inl, INLIER_COLOUR), (&out, OUTLIER_COLOUR)] {
        for (i, &v) in values.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let (x0, x1) = (frame.px(d.bin_edges[i]), frame.px(d.bin_edges[i + 1]));
            let (y0, y1) = (frame.py(v), frame.py(0.0));
            let _ = writeln!(
                svg,
                r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="{colour}" fill-opacity="0.45"/>"#,
                x1 - x0,
                y1 - y0
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<rect x="{:.2}" y="48" width="10" height="10" fill="{INLIER_COLOUR}" fill-opacity="0.45"/><text x="{:.2}" y="57">inliers</text>
<rect x="{:.2}" y="62" width="10" height="10" fill="{OUTLIER_COLOUR}" fill-opacity="0.45"/><text x="{:.2}" y="71">outliers</text>"#,
        WIDTH - RIGHT - 70.0,
        WIDTH - RIGHT - 56.0,
        WIDTH - RIGHT - 70.0,
        WIDTH - RIGHT - 56.0
    );
    close(&mut svg);
    svg
}

/// Writes the four charts into `dir`. Without a risk-coverage curve only
/// three are written and a notice explains why.
pub fn emit_plots(report: &MetricsReport, dir: &Path) -> Result<PlotOutput> {
    fs::create_dir_all(dir).map_err(|e| Error::write(dir, e))?;
    let mut out = PlotOutput::default();
    let mut files =
        vec![(ROC_FILE, roc_svg(report)), (PR_FILE, pr_svg(report)), (DISTRIBUTION_FILE, distribution_svg(report))];
    match &report.curves.risk_coverage {
        Some(curve) => files.push((RISK_COVERAGE_FILE, risk_coverage_svg(report, curve))),
        None => out.notices.push(format!(
            "{RISK_COVERAGE_FILE} skipped for {} / {}: inlier correctness flags are missing",
            report.supervisor_name, report.case_name
        )),
    }
    for (name, svg) in files {
        let path = dir.join(name);
        fs::write(&path, svg).map_err(|e| Error::write(&path, e))?;
        out.written.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{evaluate_case, CaseConfig};
    use crate::sample::{validate_samples, ScoredSample};

    fn separated(with_flags: bool) -> MetricsReport {
        let mut samples = vec![
            ScoredSample::inlier("a", 0.1),
            ScoredSample::inlier("b", 0.2),
            ScoredSample::outlier("c", 0.8),
            ScoredSample::outlier("d", 0.9),
        ];
        if with_flags {
            for s in samples.iter_mut().filter(|s| !s.is_outlier) {
                s.prediction_correct = Some(true);
            }
        }
        let cfg = CaseConfig::new("toy <&>", "sup").with_baseline(0.9);
        evaluate_case(&validate_samples(samples).unwrap(), &cfg).unwrap()
    }

    #[test]
    fn perfect_roc_passes_through_top_left_corner() {
        let svg = roc_svg(&separated(true));
        let corner = Frame::unit().point(0.0, 1.0);
        assert_eq!(corner, format!("{LEFT:.2},{TOP:.2}"));
        let line = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        assert!(line.contains(&corner), "{line}");
        assert!(svg.contains("toy &lt;&amp;&gt;"));
    }

    #[test]
    fn three_plots_without_flags() {
        let dir = tempfile::tempdir().unwrap();
        let out = emit_plots(&separated(false), dir.path()).unwrap();
        assert_eq!(out.written.len(), 3);
        assert_eq!(out.notices.len(), 1);
        assert!(!dir.path().join(RISK_COVERAGE_FILE).exists());
        let out = emit_plots(&separated(true), dir.path()).unwrap();
        assert_eq!(out.written.len(), 4);
        assert!(out.notices.is_empty());
    }

    #[test]
    fn output_is_deterministic() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let r = separated(true);
        emit_plots(&r, a.path()).unwrap();
        emit_plots(&r, b.path()).unwrap();
        for name in [ROC_FILE, PR_FILE, DISTRIBUTION_FILE, RISK_COVERAGE_FILE] {
            assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
        }
    }
}
