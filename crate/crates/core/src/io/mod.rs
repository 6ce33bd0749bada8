//! File formats: score and feature CSVs, manifests, reports and plots.

mod features;
mod manifest;
mod numfmt;
mod report_file;
mod scores;
mod svg;

pub use features::{
    parse_feature_csv, read_correctness_csv, read_feature_csv, render_feature_csv, write_correctness_csv,
    write_feature_csv,
};
pub use manifest::{
    parse_manifest, read_manifest, resolve, CaseInputs, CaseManifest, FeatureSource, ScoreFiles, SyntheticSource,
    DEFAULT_MAX_CURVE_POINTS,
};
pub use numfmt::{fmt_g17, fmt_shortest, to_json_g17, G17Formatter};
pub use report_file::{
    parse_report, read_report, render_table, sha256_hex, table_header, table_row, write_report, write_table,
    ReportFile, ToolInfo, REPORT_FILE, TABLE_FILE, TOOL_NAME,
};
pub use scores::{parse_score_csv, read_score_csv, render_score_csv, write_score_csv};
pub use svg::{
    distribution_svg, emit_plots, pr_svg, risk_coverage_svg, roc_svg, Frame, PlotOutput, DISTRIBUTION_FILE,
    MAX_PLOT_POINTS, PR_FILE, RISK_COVERAGE_FILE, ROC_FILE,
};
