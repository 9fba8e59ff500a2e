//! The JSON report envelope and the fixed-column CSV series.
//!
//! Reports carry no timestamps or machine identifiers: identical inputs and
//! seeds must produce byte-identical files.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::CliError;
use crate::inputs::write_file;

pub const REPORT_FORMAT: &str = "hyperfin-report v1";

/// Envelope for every JSON report: the report version, the versions of the
/// file formats the run consumed or emitted, a full configuration echo, and
/// the subcommand's result.
#[derive(Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub report_format: &'static str,
    pub subcommand: &'static str,
    pub formats: BTreeMap<&'static str, &'static str>,
    pub config: C,
    pub result: R,
}

pub fn write_report<C: Serialize, R: Serialize>(
    path: &str,
    report: &Report<C, R>,
) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::invariant(format!("cli: cannot serialize report: {e}")))?;
    text.push('\n');
    write_file(path, &text)
}

/// One row of the hierarchy CSV series. `max_diameter` is the certified
/// upper bound on component diameters at that stage (exact whenever the
/// stage was measured exactly); `captured` counts base-set edges witnessed
/// by stage `stage`, and `uncaptured` those born by then but not yet
/// witnessed.
pub struct CsvRow {
    pub stage: usize,
    pub f: usize,
    pub components: usize,
    pub max_diameter: usize,
    pub captured: usize,
    pub uncaptured: usize,
}

pub fn write_csv(path: &str, rows: &[CsvRow]) -> Result<(), CliError> {
    let mut text = String::from("stage,f,components,max_diameter,captured,uncaptured\n");
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.stage, r.f, r.components, r.max_diameter, r.captured, r.uncaptured
        ));
    }
    write_file(path, &text)
}
