use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::families::Violation;
use crate::numerics::{decimal_string, IntervalReal, Rational, Rounding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Violated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Violated => "violated",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Leading decimal digits shared by every point of both enclosures, or
/// exact agreement of two rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matched {
    Digits(u32),
    Exact,
}

impl Matched {
    pub fn at_least(self, digits: u32) -> bool {
        match self {
            Matched::Exact => true,
            Matched::Digits(d) => d >= digits,
        }
    }
}

impl fmt::Display for Matched {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matched::Digits(d) => write!(f, "{d}"),
            Matched::Exact => f.write_str("exact"),
        }
    }
}

impl Serialize for Matched {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Matched::Digits(d) => s.serialize_u32(*d),
            Matched::Exact => s.serialize_str("exact"),
        }
    }
}

/// Decimal endpoints of an enclosure, rounded outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lo: String,
    pub hi: String,
}

impl Bounds {
    pub fn of(iv: &IntervalReal, frac: usize) -> Self {
        Bounds { lo: iv.lo_decimal(frac), hi: iv.hi_decimal(frac) }
    }

    pub fn exact(r: &Rational, frac: usize) -> Self {
        Bounds { lo: decimal_string(r, frac, Rounding::Down), hi: decimal_string(r, frac, Rounding::Up) }
    }
}

/// Largest `d` with `width < 10^-d`, capped.
pub(crate) fn digits_below(width: &Rational, cap: u32) -> u32 {
    if width.is_zero() {
        return cap;
    }
    let mut d = 0;
    let mut scaled = width.clone();
    let ten = Rational::from_integer(BigInt::from(10));
    while d < cap {
        scaled *= &ten;
        if scaled >= Rational::one() {
            break;
        }
        d += 1;
    }
    d
}

/// `matched_digits` on the hull of two overlapping enclosures.
pub(crate) fn matched_digits(a: &IntervalReal, b: &IntervalReal, cap: u32) -> u32 {
    let lo = a.lo_rational().min(b.lo_rational());
    let hi = a.hi_rational().max(b.hi_rational());
    digits_below(&(hi - lo), cap)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub params: String,
    pub digits: u32,
    /// Partial quotients consumed by the continued-fraction side.
    pub terms: usize,
    pub cf_enclosure: Bounds,
    pub closed_form_enclosure: Bounds,
    pub matched_digits: Matched,
    pub status: Status,
    pub elapsed_ms: u64,
}

/// One point of a sweep: a report, or the reason it could not be run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportEntry {
    Report(VerificationReport),
    Invalid { family: String, params: String, error: String, violations: Vec<Violation> },
}

impl ReportEntry {
    pub fn family(&self) -> &str {
        match self {
            ReportEntry::Report(r) => &r.family,
            ReportEntry::Invalid { family, .. } => family,
        }
    }

    pub fn status_str(&self) -> &'static str {
        match self {
            ReportEntry::Report(r) => r.status.as_str(),
            ReportEntry::Invalid { .. } => "invalid",
        }
    }

    fn to_value(&self, timestamp: Option<u64>) -> Value {
        let mut v = match self {
            ReportEntry::Report(r) => serde_json::to_value(r).expect("report serializes"),
            ReportEntry::Invalid { family, params, error, violations } => json!({
                "family": family,
                "params": params,
                "status": "invalid",
                "error": error,
                "violations": violations,
            }),
        };
        if let (Some(t), Some(map)) = (timestamp, v.as_object_mut()) {
            map.insert("timestamp".into(), json!(t));
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?} (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Seconds since the Unix epoch, stamped on every entry when set.
    pub timestamp: Option<u64>,
}

/// JSON array of entries. Keys are sorted, so output is byte-stable.
pub fn reports_to_json(entries: &[ReportEntry], opts: ReportOptions) -> String {
    let arr: Vec<Value> = entries.iter().map(|e| e.to_value(opts.timestamp)).collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("json serializes");
    s.push('\n');
    s
}

/// The JSON rendering with `elapsed_ms` removed, for comparing runs.
pub fn stable_json(entries: &[ReportEntry]) -> String {
    let arr: Vec<Value> = entries
        .iter()
        .map(|e| {
            let mut v = e.to_value(None);
            if let Some(m) = v.as_object_mut() {
                m.remove("elapsed_ms");
            }
            v
        })
        .collect();
    serde_json::to_string(&Value::Array(arr)).expect("json serializes")
}

const CSV_HEADER: [&str; 12] = [
    "family",
    "params",
    "digits",
    "terms",
    "cf_lo",
    "cf_hi",
    "closed_form_lo",
    "closed_form_hi",
    "matched_digits",
    "status",
    "elapsed_ms",
    "error",
];

pub fn reports_to_csv(entries: &[ReportEntry], opts: ReportOptions) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if opts.timestamp.is_some() {
        header.push("timestamp");
    }
    w.write_record(&header).expect("in-memory write");
    for e in entries {
        let mut row: Vec<String> = match e {
            ReportEntry::Report(r) => vec![
                r.family.clone(),
                r.params.clone(),
                r.digits.to_string(),
                r.terms.to_string(),
                r.cf_enclosure.lo.clone(),
                r.cf_enclosure.hi.clone(),
                r.closed_form_enclosure.lo.clone(),
                r.closed_form_enclosure.hi.clone(),
                r.matched_digits.to_string(),
                r.status.to_string(),
                r.elapsed_ms.to_string(),
                String::new(),
            ],
            ReportEntry::Invalid { family, params, error, .. } => {
                let mut row = vec![String::new(); CSV_HEADER.len()];
                row[0] = family.clone();
                row[1] = params.clone();
                row[9] = "invalid".into();
                row[11] = error.clone();
                row
            }
        };
        if let Some(t) = opts.timestamp {
            row.push(t.to_string());
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn render_reports(entries: &[ReportEntry], format: ReportFormat, opts: ReportOptions) -> String {
    match format {
        ReportFormat::Json => reports_to_json(entries, opts),
        ReportFormat::Csv => reports_to_csv(entries, opts),
    }
}

pub fn write_report(
    entries: &[ReportEntry],
    path: &Path,
    format: ReportFormat,
    opts: ReportOptions,
) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(render_reports(entries, format, opts).as_bytes())?;
    f.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn digit_counting() {
        assert_eq!(digits_below(&rat(1, 1000), 50), 2);
        assert_eq!(digits_below(&rat(999, 1_000_000), 50), 3);
        assert_eq!(digits_below(&rat(2, 1), 50), 0);
        assert_eq!(digits_below(&Rational::zero(), 50), 50);
    }

    #[test]
    fn empty_outputs() {
        assert_eq!(reports_to_json(&[], ReportOptions::default()).trim(), "[]");
        let csv = reports_to_csv(&[], ReportOptions::default());
        assert_eq!(csv.lines().count(), 1);
        assert!(csv.starts_with("family,params,digits"));
    }
}
