//! Exhaustive checks of the extremal statements on every instance up to a
//! given size. Each check returns a [`VerificationReport`]; a claim holds
//! on the covered grid exactly when the report has no violations.

mod appendix;
mod extremal;
mod lemmas;
mod transform;

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{Exponent, IndexValue};

pub use appendix::{f1, f2, verify_appendix_positivity, APPENDIX_MIN_GRID};
pub use extremal::{verify_base_catalogs, verify_theorem};
pub use lemmas::{verify_orientation_bound, verify_pendant_deletion, verify_sink_source_count};
pub use transform::{transformation_a_triples, transformation_b_triples, verify_transformation_a, verify_transformation_b};

/// Violations kept in full; later ones are only counted.
const MAX_RECORDED: usize = 1000;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Grid {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<usize>,
    pub a: Vec<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub detail: String,
}

/// Equality instances of one unit, grouped by the predicate that explains
/// them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub instance: String,
    pub a: String,
    pub tag: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxRow {
    pub n: usize,
    pub r: usize,
    pub a: Exponent,
    pub bound: IndexValue,
    pub achieved_max: IndexValue,
    pub witness_count: usize,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub name: String,
    pub expression: String,
    pub interval: (f64, f64),
    pub grid_points: usize,
    pub grid_min: f64,
    pub grid_argmin: f64,
    /// Smallest lower bound over all grid segments.
    pub interval_lower_bound: f64,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub grid: Grid,
    pub instances: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub equality_cases: Vec<EqualityCase>,
    pub max_tables: Vec<MaxRow>,
    pub numeric_checks: Vec<NumericCheck>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of one independent work unit.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub instances: u64,
    pub violations: Vec<Violation>,
    pub equality: Vec<EqualityCase>,
}

impl Outcome {
    pub fn violate(&mut self, instance: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            instance: instance.into(),
            detail: detail.into(),
        });
    }
}

pub(crate) struct Builder {
    report: VerificationReport,
    started: Instant,
}

impl Builder {
    pub fn new(claim: &str, grid: Grid) -> Self {
        Builder {
            report: VerificationReport {
                claim: claim.to_string(),
                grid,
                instances: 0,
                violation_count: 0,
                violations: Vec::new(),
                equality_cases: Vec::new(),
                max_tables: Vec::new(),
                numeric_checks: Vec::new(),
                notes: Vec::new(),
                wall_ms: 0,
            },
            started: Instant::now(),
        }
    }

    pub fn absorb(&mut self, outcome: Outcome) {
        let r = &mut self.report;
        r.instances += outcome.instances;
        r.violation_count += outcome.violations.len() as u64;
        let room = MAX_RECORDED.saturating_sub(r.violations.len());
        r.violations.extend(outcome.violations.into_iter().take(room));
        r.equality_cases.extend(outcome.equality);
    }

    pub fn violate(&mut self, instance: impl Into<String>, detail: impl Into<String>) {
        let mut o = Outcome::default();
        o.violate(instance, detail);
        self.absorb(o);
    }

    pub fn row(&mut self, row: MaxRow) {
        if !row.matched {
            self.violate(
                format!("n={} r={} a={}", row.n, row.r, row.a),
                format!(
                    "maximum {} with {} witness classes does not match bound {} and the extremal set",
                    row.achieved_max, row.witness_count, row.bound
                ),
            );
        }
        self.report.max_tables.push(row);
    }

    pub fn numeric(&mut self, check: NumericCheck) {
        self.report.numeric_checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    pub fn finish(mut self) -> VerificationReport {
        let r = &mut self.report;
        if r.violation_count > r.violations.len() as u64 {
            let note = format!(
                "{} violations found, first {} recorded",
                r.violation_count,
                r.violations.len()
            );
            r.notes.push(note);
        }
        r.wall_ms = self.started.elapsed().as_millis() as u64;
        self.report
    }
}

pub(crate) fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        return Err(Error::CapExceeded { what, actual, cap });
    }
    Ok(())
}
