use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::numerics::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Integer,
    Rational,
    /// Colon-separated list of positive integers, e.g. `1:2:3`; empty allowed.
    IntList,
}

/// Candidate values used when building parameter grids.
#[derive(Debug, Clone, Copy)]
pub enum GridDomain {
    Ints(i64, i64),
    /// Fractions `j/den` in `[lo, hi]` for each listed denominator.
    Fracs {
        lo: i64,
        hi: i64,
        dens: &'static [i64],
    },
    Lists(&'static [&'static [i64]]),
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub grid: GridDomain,
}

pub(crate) const fn int(name: &'static str, lo: i64, hi: i64) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Integer, grid: GridDomain::Ints(lo, hi) }
}

pub(crate) const fn frac(name: &'static str, lo: i64, hi: i64, dens: &'static [i64]) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Rational, grid: GridDomain::Fracs { lo, hi, dens } }
}

pub(crate) const fn list(name: &'static str, options: &'static [&'static [i64]]) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::IntList, grid: GridDomain::Lists(options) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Num(Rational),
    List(Vec<BigInt>),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Num(r) => f.write_str(&format_rational(r)),
            ParamValue::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(":"))
            }
        }
    }
}

/// Parameter assignment, name to value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamSet(pub BTreeMap<String, ParamValue>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse parameter assignment {text:?}: {reason}")]
pub struct ParamParseError {
    pub text: String,
    pub reason: String,
}

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.0.insert(name.to_string(), ParamValue::Num(value));
        self
    }

    pub fn with_int(self, name: &str, value: i64) -> Self {
        self.with(name, Rational::from_integer(value.into()))
    }

    pub fn with_list(mut self, name: &str, values: &[i64]) -> Self {
        self.0.insert(name.to_string(), ParamValue::List(values.iter().map(|&x| x.into()).collect()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.get(name)
    }

    /// Parses `k=v,k=v`, where values are rationals `p/q` or colon lists.
    pub fn parse(text: &str) -> Result<Self, ParamParseError> {
        let mut out = ParamSet::new();
        let err = |reason: &str| ParamParseError { text: text.to_string(), reason: reason.to_string() };
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| err(&format!("{item:?} is not name=value")))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(&format!("bad parameter name {k:?}")));
            }
            let value = if v.is_empty() || v.contains(':') {
                let mut xs = Vec::new();
                for part in v.split(':').filter(|s| !s.is_empty()) {
                    let n: BigInt =
                        part.trim().parse().map_err(|_| err(&format!("bad list entry {part:?} for {k}")))?;
                    xs.push(n);
                }
                ParamValue::List(xs)
            } else {
                ParamValue::Num(parse_rational(v).map_err(|_| err(&format!("bad value {v:?} for {k}")))?)
            };
            if out.0.insert(k.to_string(), value).is_some() {
                return Err(err(&format!("{k} assigned twice")));
            }
        }
        Ok(out)
    }

    /// `k=v,...` in the order of `schema`, then any extra names.
    pub fn format_with(&self, schema: &[ParamSpec]) -> String {
        let mut parts = Vec::new();
        for s in schema {
            if let Some(v) = self.0.get(s.name) {
                parts.push(format!("{}={}", s.name, v));
            }
        }
        for (k, v) in &self.0 {
            if !schema.iter().any(|s| s.name == k) {
                parts.push(format!("{k}={v}"));
            }
        }
        parts.join(",")
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

/// A failed hypothesis, e.g. `c + dm > 0` with detail `value is -3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails ({})", self.constraint, self.detail)
    }
}

/// Schema-checked view of a parameter set.
pub(crate) struct Args<'a>(pub &'a ParamSet);

impl Args<'_> {
    pub fn rat(&self, name: &str) -> Rational {
        match self.0.get(name) {
            Some(ParamValue::Num(r)) => r.clone(),
            _ => panic!("parameter {name} missing after schema check"),
        }
    }

    pub fn int(&self, name: &str) -> BigInt {
        self.rat(name).to_integer()
    }

    pub fn small(&self, name: &str) -> i64 {
        i64::try_from(self.int(name)).unwrap_or(i64::MAX)
    }

    pub fn list(&self, name: &str) -> Vec<BigInt> {
        match self.0.get(name) {
            Some(ParamValue::List(v)) => v.clone(),
            _ => panic!("list parameter {name} missing after schema check"),
        }
    }
}

/// A lone integer given for a list parameter is a one-element list.
pub(crate) fn normalize(schema: &[ParamSpec], p: &ParamSet) -> ParamSet {
    let mut out = p.clone();
    for s in schema.iter().filter(|s| s.kind == ParamKind::IntList) {
        if let Some(ParamValue::Num(r)) = p.get(s.name) {
            if r.is_integer() {
                out.0.insert(s.name.to_string(), ParamValue::List(vec![r.to_integer()]));
            }
        }
    }
    out
}

pub(crate) fn check_schema(schema: &[ParamSpec], p: &ParamSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for s in schema {
        match (p.get(s.name), s.kind) {
            (None, _) => {
                out.push(Violation { constraint: format!("{} is required", s.name), detail: "missing".into() })
            }
            (Some(ParamValue::Num(r)), ParamKind::Integer) if !r.is_integer() => out.push(Violation {
                constraint: format!("{} is an integer", s.name),
                detail: format!("{} = {}", s.name, format_rational(r)),
            }),
            (Some(ParamValue::List(_)), ParamKind::Integer | ParamKind::Rational) => {
                out.push(Violation { constraint: format!("{} is a number", s.name), detail: "got a list".into() })
            }
            (Some(ParamValue::Num(r)), ParamKind::IntList) => out.push(Violation {
                constraint: format!("{} is a colon-separated list", s.name),
                detail: format!("got {}", format_rational(r)),
            }),
            (Some(ParamValue::List(v)), ParamKind::IntList) => {
                if let Some(bad) = v.iter().find(|x| !x.is_positive()) {
                    out.push(Violation {
                        constraint: format!("entries of {} are positive", s.name),
                        detail: format!("found {bad}"),
                    });
                }
            }
            _ => {}
        }
    }
    for k in p.0.keys() {
        if !schema.iter().any(|s| s.name == k) {
            out.push(Violation {
                constraint: format!("{k} is a parameter of this family"),
                detail: "unknown name".into(),
            });
        }
    }
    out
}

/// Collects violated hypotheses.
#[derive(Default)]
pub(crate) struct Checks(pub Vec<Violation>);

impl Checks {
    pub fn require(&mut self, ok: bool, constraint: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Violation { constraint: constraint.to_string(), detail: detail() });
        }
    }

    pub fn positive(&mut self, constraint: &str, value: &Rational) {
        self.require(value.is_positive(), constraint, || format!("value is {}", format_rational(value)));
    }

    pub fn nonzero(&mut self, constraint: &str, value: &Rational) {
        self.require(!value.is_zero(), constraint, || "value is 0".to_string());
    }

    /// Positive integer.
    pub fn natural(&mut self, constraint: &str, value: &Rational) {
        self.require(value.is_integer() && value.is_positive(), constraint, || {
            format!("value is {}", format_rational(value))
        });
    }

    pub fn equal(&mut self, constraint: &str, lhs: &Rational, rhs: &Rational) {
        self.require(lhs == rhs, constraint, || format!("{} != {}", format_rational(lhs), format_rational(rhs)));
    }

    pub fn at_least(&mut self, name: &str, value: &Rational, bound: i64) {
        let b = Rational::from_integer(bound.into());
        let constraint = match bound {
            0 => format!("{name} >= 0"),
            _ => format!("{name} > {}", bound - 1),
        };
        self.require(value >= &b, &constraint, || format!("{name} = {}", format_rational(value)));
    }

    pub fn done(self) -> Vec<Violation> {
        self.0
    }
}
