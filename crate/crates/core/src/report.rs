//! Serialization of verification reports.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::verify::VerificationReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json, csv or text)")),
        }
    }
}

pub const CSV_HEADER: [&str; 7] = ["n", "r", "a", "bound", "achieved_max", "witness_count", "match"];

/// Renders one report. JSON carries everything; CSV flattens the maximum
/// table only; text is a short human summary.
pub fn emit_report(report: &VerificationReport, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| io("json", e))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(std::slice::from_ref(report)),
        Format::Text => Ok(text(report)),
    }
}

/// Several reports as one document: a JSON array, one CSV table, or the
/// text summaries one after another.
pub fn emit_reports(reports: &[VerificationReport], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).map_err(|e| io("json", e))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(reports),
        Format::Text => Ok(reports.iter().map(text).collect::<Vec<_>>().join("\n")),
    }
}

fn csv_rows(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| io("csv", e))?;
    for row in reports.iter().flat_map(|r| &r.max_tables) {
        w.write_record([
            row.n.to_string(),
            row.r.to_string(),
            row.a.to_string(),
            row.bound.to_string(),
            row.achieved_max.to_string(),
            row.witness_count.to_string(),
            row.matched.to_string(),
        ])
        .map_err(|e| io("csv", e))?;
    }
    let bytes = w.into_inner().map_err(|e| io("csv", e))?;
    String::from_utf8(bytes).map_err(|e| io("csv", e))
}

fn text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        s,
        "{verdict} {}: {} instances, {} violations, {} ms",
        r.claim, r.instances, r.violation_count, r.wall_ms
    );
    for v in &r.violations {
        let _ = writeln!(s, "  violation {}: {}", v.instance, v.detail);
    }
    for e in &r.equality_cases {
        let _ = writeln!(s, "  equality {} a={} [{}] x{}", e.instance, e.a, e.tag, e.count);
    }
    for row in &r.max_tables {
        let _ = writeln!(
            s,
            "  n={} r={} a={} bound={} max={} witnesses={} match={}",
            row.n, row.r, row.a, row.bound, row.achieved_max, row.witness_count, row.matched
        );
    }
    for c in &r.numeric_checks {
        let _ = writeln!(
            s,
            "  {} on [{}, {}]: min {:.6} at a = {:.6}, segment bound {:.6}, positive = {}",
            c.name, c.interval.0, c.interval.1, c.grid_min, c.grid_argmin, c.interval_lower_bound, c.positive
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn io(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: what.into(),
        message: e.to_string(),
    }
}
