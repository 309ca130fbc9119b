//! Deterministic report emission.
//!
//! A report is a JSON envelope `{schema_version, version, timestamp, config,
//! rows, summary}` or a CSV table of the rows alone. Every floating-point
//! value is rendered at 17 significant digits (`{:.16e}`) in both formats,
//! so binary64 values round-trip exactly and reports are byte-identical
//! across runs and parallelism degrees. The timestamp honours
//! `SOURCE_DATE_EPOCH` for reproducible output.

use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use raygen::bounds::{Certification, Relation};
use raygen::quadforms::ConnectivityResult;
use raygen::zmstar::ZmVerificationResult;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub schema_version: u32,
    pub version: &'static str,
    pub timestamp: u64,
    pub config: C,
    pub rows: Vec<R>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    /// Tallies rows by their (ok, skipped) classification.
    pub fn tally<R>(rows: &[R], ok: impl Fn(&R) -> bool, skipped: impl Fn(&R) -> bool) -> Summary {
        let mut s = Summary {
            rows: rows.len(),
            ..Summary::default()
        };
        for r in rows {
            if !ok(r) {
                s.failed += 1;
            } else if skipped(r) {
                s.skipped += 1;
            } else {
                s.passed += 1;
            }
        }
        s
    }
}

pub fn timestamp() -> u64 {
    if let Ok(epoch) = std::env::var("SOURCE_DATE_EPOCH") {
        if let Ok(t) = epoch.parse() {
            return t;
        }
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// The one float rendering used everywhere: 17 significant digits.
pub fn float_cell(x: f64) -> String {
    format!("{x:.16e}")
}

/// `serde_json` formatter that emits floats via [`float_cell`].
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(float_cell(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn write_json<C: Serialize, R: Serialize>(
    mut w: impl Write,
    report: &Report<C, R>,
) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut w, SciFormatter);
    report
        .serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    writeln!(w)
}

/// Row types that know their own CSV schema. Cell conventions: floats via
/// [`float_cell`], lists joined with `;`, entries within a basis row with
/// `:`, absent optionals as empty cells.
pub trait CsvRow {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn write_csv<R: CsvRow>(w: impl Write, rows: &[R]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(R::headers())?;
    for row in rows {
        out.write_record(row.cells())?;
    }
    out.flush()
}

fn join_list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn join_basis(rows: &[Vec<u64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(":"))
        .collect::<Vec<_>>()
        .join(";")
}

fn opt_u64(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl CsvRow for ZmVerificationResult {
    fn headers() -> &'static [&'static str] {
        &[
            "modulus",
            "subgroup_index",
            "subgroup_order",
            "subgroup_basis",
            "bound",
            "refined_bound",
            "generating_primes",
            "largest_needed_prime",
            "trivial",
            "pass",
            "pass_refined",
            "skipped",
            "reason",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.modulus.to_string(),
            self.subgroup_index.to_string(),
            self.subgroup_order.to_string(),
            join_basis(&self.subgroup_basis),
            float_cell(self.bound),
            float_cell(self.refined_bound),
            join_list(&self.generating_primes),
            opt_u64(self.largest_needed_prime),
            self.trivial.to_string(),
            self.pass.to_string(),
            self.pass_refined.to_string(),
            self.skipped.to_string(),
            self.reason.clone().unwrap_or_default(),
        ]
    }
}

impl CsvRow for ConnectivityResult {
    fn headers() -> &'static [&'static str] {
        &[
            "fundamental_disc",
            "conductor",
            "discriminant",
            "conductor_norm",
            "class_number",
            "bound",
            "primes_used",
            "threshold_prime",
            "exceptional",
            "pass",
            "skipped",
            "reason",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.fundamental_disc.to_string(),
            self.conductor.to_string(),
            self.discriminant.to_string(),
            self.conductor_norm.to_string(),
            self.class_number.to_string(),
            float_cell(self.bound),
            join_list(&self.primes_used),
            opt_u64(self.threshold_prime),
            self.exceptional.to_string(),
            self.pass.to_string(),
            self.skipped.to_string(),
            self.reason.clone().unwrap_or_default(),
        ]
    }
}

impl CsvRow for Certification {
    fn headers() -> &'static [&'static str] {
        &["name", "computed", "relation", "threshold", "slack", "pass"]
    }

    fn cells(&self) -> Vec<String> {
        let relation = match self.relation {
            Relation::Le => "le",
            Relation::Lt => "lt",
            Relation::Ge => "ge",
        };
        vec![
            self.name.to_string(),
            float_cell(self.computed),
            relation.to_string(),
            float_cell(self.threshold),
            float_cell(self.slack),
            self.pass.to_string(),
        ]
    }
}
