//! Library side of the `lochness` command: polygon files, reports, and the
//! single-purpose subcommand entry points.

pub mod error;
pub mod report;
pub mod spec;

pub use error::CliError;
pub use report::{run_report, MonsterReport, ReportOptions};
pub use spec::{parse_polygon_spec, PolygonBody, PolygonSpec};
