//! Verification reports and the front ends behind the `cfam` subcommands.

mod expand;
mod report;
mod run;
mod transform;

pub use expand::{parse_value, run_expand, ExpandError, Expansion};
pub use report::{
    render_reports, reports_to_csv, reports_to_json, stable_json, write_report, Bounds, Matched, ReportEntry,
    ReportFormat, ReportOptions, Status, VerificationReport,
};
pub use run::{
    parse_sweep_config, run_point, run_sweep, run_verify, ConfigError, SweepPoint, SweepSummary, VerifyError,
    DEFAULT_DIGITS, DEFAULT_TERMS,
};
pub use transform::{run_transform, TransformError, TransformKind, TransformOutput};
