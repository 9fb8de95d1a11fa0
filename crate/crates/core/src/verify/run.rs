use std::time::Instant;

use rayon::prelude::*;
use serde_json::Value;

use crate::cf::{certified_value_budget, CertifiedValue, CfError};
use crate::families::{family, grid_for, FamilyError, FamilySpec, ParamSet};
use crate::numerics::Real;

use super::report::{matched_digits, Bounds, Matched, ReportEntry, Status, VerificationReport};

pub const DEFAULT_DIGITS: u32 = 40;
pub const DEFAULT_TERMS: usize = 60;

/// Both sides are enclosed this many digits beyond the request so that the
/// hull of two agreeing enclosures is still narrower than `10^-digits`.
const EXTRA_DIGITS: u32 = 3;
/// Decimal places beyond `digits` printed for enclosure endpoints.
const SHOWN_EXTRA: usize = 5;
/// The quotient budget is doubled at most this many times.
const BUDGET_DOUBLINGS: u32 = 6;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{family}: continued fraction: {source}")]
    Cf { family: String, source: CfError },
}

impl VerifyError {
    /// Usage problems (unknown family, bad parameters) as opposed to
    /// evaluation failures.
    pub fn is_usage(&self) -> bool {
        matches!(self, VerifyError::Family(FamilyError::Unknown(_) | FamilyError::Invalid { .. }))
    }
}

/// Certified value of the expansion, doubling the quotient budget while it
/// is insufficient.
fn cf_side(spec: &FamilySpec, p: &ParamSet, digits: u32, terms: usize) -> Result<Option<CertifiedValue>, VerifyError> {
    let cf = spec.expansion(p)?;
    let mut budget = terms.max(1);
    for _ in 0..=BUDGET_DOUBLINGS {
        match certified_value_budget(&cf, digits, budget) {
            Ok(v) => return Ok(Some(v)),
            Err(CfError::Budget { .. }) => budget *= 2,
            Err(e) => return Err(VerifyError::Cf { family: spec.id.to_string(), source: e }),
        }
    }
    Ok(None)
}

/// Compares the certified value of a family's expansion with its certified
/// closed form.
pub fn run_verify(family_id: &str, p: &ParamSet, digits: u32, terms: usize) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let spec = family(family_id)?;
    spec.validate(p).map_err(|violations| FamilyError::Invalid { family: spec.id.to_string(), violations })?;
    let work = digits + EXTRA_DIGITS;
    let shown = digits as usize + SHOWN_EXTRA;

    let closed_real: Real = spec.closed_form_real(p)?;
    let closed =
        closed_real.enclose(work).map_err(|e| FamilyError::Eval { family: spec.id.to_string(), source: e.into() })?;
    let cf = cf_side(spec, p, work, terms)?;

    let (status, matched, cf_bounds, used) = match &cf {
        None => (Status::Inconclusive, Matched::Digits(0), Bounds { lo: "-".into(), hi: "-".into() }, terms),
        Some(v) => {
            let exact = match (&v.exact, closed_real.as_exact()) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            let (status, matched) = match exact {
                Some(true) => (Status::Verified, Matched::Exact),
                Some(false) => (Status::Violated, Matched::Digits(0)),
                None if !v.enclosure.overlaps(&closed) => (Status::Violated, Matched::Digits(0)),
                None => {
                    let m = Matched::Digits(matched_digits(&v.enclosure, &closed, work));
                    let s = if m.at_least(digits) { Status::Verified } else { Status::Inconclusive };
                    (s, m)
                }
            };
            let bounds = match &v.exact {
                Some(x) => Bounds::exact(x, shown),
                None => Bounds::of(&v.enclosure, shown),
            };
            (status, matched, bounds, v.terms_used)
        }
    };

    Ok(VerificationReport {
        family: spec.id.to_string(),
        params: spec.format_params(p),
        digits,
        terms: used,
        cf_enclosure: cf_bounds,
        closed_form_enclosure: match closed_real.as_exact() {
            Some(x) => Bounds::exact(x, shown),
            None => Bounds::of(&closed, shown),
        },
        matched_digits: matched,
        status,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// A single sweep job: one family and one parameter tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub family: String,
    pub params: ParamSet,
    pub digits: u32,
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("config is not valid JSON (line {line}, column {column}): {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("config field {field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field: field.into(), message: message.into() }
}

fn read_u64(v: &Value, field: &str) -> Result<Option<u64>, ConfigError> {
    match v.get(field.rsplit('.').next().unwrap_or(field)) {
        None => Ok(None),
        Some(x) => {
            x.as_u64().filter(|&n| n > 0).map(Some).ok_or_else(|| field_err(field, "expected a positive integer"))
        }
    }
}

fn params_from_value(v: &Value, field: &str) -> Result<ParamSet, ConfigError> {
    match v {
        Value::String(s) => ParamSet::parse(s).map_err(|e| field_err(field, e.to_string())),
        Value::Object(map) => {
            let mut parts = Vec::new();
            for (k, x) in map {
                let text = match x {
                    Value::Number(n) => n.to_string(),
                    Value::String(s) => s.clone(),
                    Value::Array(items) => {
                        let mut xs = Vec::new();
                        for (i, it) in items.iter().enumerate() {
                            let n = it
                                .as_i64()
                                .ok_or_else(|| field_err(format!("{field}.{k}[{i}]"), "expected an integer"))?;
                            xs.push(n.to_string());
                        }
                        // a trailing colon keeps one-element lists as lists
                        format!("{}:", xs.join(":"))
                    }
                    _ => {
                        return Err(field_err(
                            format!("{field}.{k}"),
                            "expected a number, a \"p/q\" string or an integer array",
                        ))
                    }
                };
                parts.push(format!("{k}={text}"));
            }
            ParamSet::parse(&parts.join(",")).map_err(|e| field_err(field, e.to_string()))
        }
        _ => Err(field_err(field, "expected \"k=v,...\" or an object")),
    }
}

/// Parses a sweep configuration:
///
/// ```json
/// { "digits": 40, "terms": 60,
///   "jobs": [ { "family": "tas1", "grid": "default" },
///             { "family": "*", "grid": "default" },
///             { "family": "tas3", "grid": ["e=1,f=1,u=2,v=3", {"e": "1/2", "f": 2, "u": 4, "v": 3}],
///               "digits": 30, "terms": 120 } ] }
/// ```
///
/// `"family": "*"` expands to every catalog family.
pub fn parse_sweep_config(text: &str) -> Result<Vec<SweepPoint>, ConfigError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ConfigError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if !root.is_object() {
        return Err(field_err("<root>", "expected an object"));
    }
    let digits = read_u64(&root, "digits")?.unwrap_or(DEFAULT_DIGITS as u64) as u32;
    let terms = read_u64(&root, "terms")?.unwrap_or(DEFAULT_TERMS as u64) as usize;
    let jobs = match root.get("jobs") {
        None => return Err(field_err("jobs", "missing")),
        Some(Value::Array(a)) => a,
        Some(_) => return Err(field_err("jobs", "expected an array")),
    };
    let mut out = Vec::new();
    for (i, job) in jobs.iter().enumerate() {
        let base = format!("jobs[{i}]");
        let fam = job
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| field_err(format!("{base}.family"), "expected a family id string"))?;
        let digits = read_u64(job, &format!("{base}.digits"))?.map_or(digits, |d| d as u32);
        let terms = read_u64(job, &format!("{base}.terms"))?.map_or(terms, |t| t as usize);
        let specs: Vec<&FamilySpec> = if fam == "*" {
            crate::families::catalog().iter().collect()
        } else {
            vec![family(fam).map_err(|e| field_err(format!("{base}.family"), e.to_string()))?]
        };
        let grid = job.get("grid").unwrap_or(&Value::Null);
        for spec in specs {
            let points: Vec<ParamSet> = match grid {
                Value::Null => grid_for(spec),
                Value::String(s) if s == "default" => grid_for(spec),
                Value::Array(items) => items
                    .iter()
                    .enumerate()
                    .map(|(j, it)| params_from_value(it, &format!("{base}.grid[{j}]")))
                    .collect::<Result<_, _>>()?,
                _ => {
                    return Err(field_err(format!("{base}.grid"), "expected \"default\" or an array of parameter sets"))
                }
            };
            out.extend(points.into_iter().map(|params| SweepPoint {
                family: spec.id.to_string(),
                params,
                digits,
                terms,
            }));
        }
    }
    Ok(out)
}

/// Counts by status, `invalid` covering points that could not be run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct SweepSummary {
    pub verified: usize,
    pub inconclusive: usize,
    pub violated: usize,
    pub invalid: usize,
}

impl SweepSummary {
    pub fn of(entries: &[ReportEntry]) -> Self {
        let mut s = SweepSummary::default();
        for e in entries {
            match e {
                ReportEntry::Report(r) => match r.status {
                    Status::Verified => s.verified += 1,
                    Status::Inconclusive => s.inconclusive += 1,
                    Status::Violated => s.violated += 1,
                },
                ReportEntry::Invalid { .. } => s.invalid += 1,
            }
        }
        s
    }

    /// Worst status first: violated 3, inconclusive 2, invalid 1, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.violated > 0 {
            3
        } else if self.inconclusive > 0 {
            2
        } else if self.invalid > 0 {
            1
        } else {
            0
        }
    }
}

pub fn run_point(pt: &SweepPoint) -> ReportEntry {
    match run_verify(&pt.family, &pt.params, pt.digits, pt.terms) {
        Ok(r) => ReportEntry::Report(r),
        Err(e) => {
            let params = crate::families::family(&pt.family)
                .map(|f| f.format_params(&pt.params))
                .unwrap_or_else(|_| pt.params.to_string());
            let violations = match &e {
                VerifyError::Family(FamilyError::Invalid { violations, .. }) => violations.clone(),
                _ => Vec::new(),
            };
            ReportEntry::Invalid { family: pt.family.clone(), params, error: e.to_string(), violations }
        }
    }
}

/// Runs every point on the rayon pool; output order is point order.
pub fn run_sweep(points: &[SweepPoint]) -> (Vec<ReportEntry>, SweepSummary) {
    let entries: Vec<ReportEntry> = points.par_iter().map(run_point).collect();
    let summary = SweepSummary::of(&entries);
    (entries, summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_name_the_field() {
        let e = parse_sweep_config(r#"{"jobs": [{"family": "tas1", "grid": 3}]}"#).unwrap_err();
        assert!(e.to_string().contains("jobs[0].grid"), "{e}");
        let e = parse_sweep_config(r#"{"jobs": [{"family": "nope"}]}"#).unwrap_err();
        assert!(e.to_string().contains("jobs[0].family"), "{e}");
        let e = parse_sweep_config("{\n \"jobs\": [,]}").unwrap_err();
        assert!(matches!(e, ConfigError::Json { line: 2, .. }), "{e}");
        let e = parse_sweep_config(r#"{"digits": -1, "jobs": []}"#).unwrap_err();
        assert!(e.to_string().contains("digits"), "{e}");
    }

    #[test]
    fn config_grids() {
        let pts = parse_sweep_config(r#"{"jobs": [{"family": "tas1", "grid": []}]}"#).unwrap();
        assert!(pts.is_empty());
        let pts = parse_sweep_config(
            r#"{"digits": 20, "jobs": [{"family": "apinter", "grid": [{"prefix": [1], "c": 1, "d": "1/2", "m": 4}], "terms": 9}]}"#,
        )
        .unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!((pts[0].digits, pts[0].terms), (20, 9));
        assert_eq!(
            pts[0].params,
            ParamSet::new()
                .with_list("prefix", &[1])
                .with_int("c", 1)
                .with("d", crate::numerics::rat(1, 2))
                .with_int("m", 4)
        );
        let pts = parse_sweep_config(r#"{"jobs": [{"family": "*"}]}"#).unwrap();
        assert!(pts.len() >= 26 * 3);
    }

    #[test]
    fn verify_examples() {
        let p = ParamSet::parse("c=1,d=1,m=2").unwrap();
        let r = run_verify("tas1", &p, 40, 60).unwrap();
        assert_eq!(r.status, Status::Verified);

        let p = ParamSet::parse("a=1,b=1,c=1,n=3").unwrap();
        let r = run_verify("fin_ap", &p, 40, 60).unwrap();
        assert_eq!((r.status, r.matched_digits), (Status::Verified, Matched::Exact));
        assert!(r.cf_enclosure.lo.starts_with("0.7000"), "{:?}", r.cf_enclosure);

        let p = ParamSet::parse("c=-5,d=1,m=2").unwrap();
        let e = run_verify("tas1", &p, 40, 60).unwrap_err();
        assert!(e.is_usage());
        assert!(e.to_string().contains("c + dm > 0"), "{e}");
    }
}
