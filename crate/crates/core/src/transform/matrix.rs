use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::expr::{parse_expr, Expr, ExprError};
use crate::numerics::Rational;

/// Exact 2×2 rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(int(1), int(0), int(0), int(1))
    }

    /// `[[x, 1], [1, 0]]`.
    pub fn quotient(x: Rational) -> Self {
        Self::new(x, int(1), int(1), int(0))
    }

    /// `[[r, t], [0, s]]`.
    pub fn upper(r: Rational, t: Rational, s: Rational) -> Self {
        Self::new(r, t, int(0), s)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    /// `Q(x)` = `[[x, 1], [1, 0]]`.
    Quotient(Expr),
    /// `R(r,t;0,s)`.
    Upper { r: Expr, t: Expr, s: Expr },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatrixWord {
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("identity {identity}: {source} under {assignment}")]
    Undefined { identity: String, assignment: String, source: ExprError },
    #[error("identity {identity}: {msg}")]
    Declaration { identity: String, msg: String },
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, MatrixError> {
    Err(MatrixError::Syntax { line, msg: msg.into() })
}

/// Splits `s` at top-level occurrences of `sep`.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl MatrixWord {
    /// Parses a sequence of `Q(expr)` and `R(r,t;0,s)` factors.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut factors = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let kind = rest.chars().next().expect("non-empty");
            let body = rest[1..].trim_start();
            if !body.starts_with('(') {
                return Err(format!("expected '(' after {kind:?} in {rest:?}"));
            }
            let mut depth = 0;
            let mut close = None;
            for (i, c) in body.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let close = close.ok_or_else(|| format!("unbalanced parentheses in {rest:?}"))?;
            let inner = &body[1..close];
            let e = |s: &str| parse_expr(s).map_err(|err| format!("{err} in {s:?}"));
            match kind {
                'Q' => factors.push(Factor::Quotient(e(inner)?)),
                'R' => {
                    let rows = split_top(inner, ';');
                    let [top, bottom] = rows[..] else {
                        return Err(format!("R needs two rows separated by ';': {inner:?}"));
                    };
                    let top = split_top(top, ',');
                    let bottom = split_top(bottom, ',');
                    let ([r, t], [zero, s]) = (&top[..], &bottom[..]) else {
                        return Err(format!("R needs entries (r,t;0,s): {inner:?}"));
                    };
                    if zero.trim() != "0" {
                        return Err(format!("R must be upper triangular: {inner:?}"));
                    }
                    factors.push(Factor::Upper { r: e(r)?, t: e(t)?, s: e(s)? });
                }
                other => return Err(format!("unknown factor {other:?}")),
            }
            rest = body[close + 1..].trim_start();
        }
        if factors.is_empty() {
            return Err("empty matrix word".into());
        }
        Ok(MatrixWord { factors })
    }

    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Mat2, ExprError> {
        let mut acc = Mat2::identity();
        for f in &self.factors {
            let m = match f {
                Factor::Quotient(x) => Mat2::quotient(x.eval(env)?),
                Factor::Upper { r, t, s } => Mat2::upper(r.eval(env)?, t.eval(env)?, s.eval(env)?),
            };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }
}

/// Sampled symbol `name = k * multiple` with `k` uniform in `lo..=hi`, or a
/// derived symbol `name = expr` when `derived` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolDecl {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
    pub multiple_of: Option<Expr>,
    pub derived: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixIdentity {
    pub name: String,
    pub symbols: Vec<SymbolDecl>,
    pub lhs: MatrixWord,
    pub rhs: MatrixWord,
    /// Falsification controls are expected to fail.
    pub expect_fail: bool,
}

impl MatrixIdentity {
    pub fn with_range(mut self, name: &str, lo: i64, hi: i64) -> Self {
        for s in &mut self.symbols {
            if s.name == name {
                s.lo = lo;
                s.hi = hi;
            }
        }
        self
    }

    /// Copy with the first right-hand quotient entry increased by one.
    pub fn perturbed(&self) -> Self {
        let mut out = self.clone();
        out.name = format!("{}_perturbed", self.name);
        out.expect_fail = !self.expect_fail;
        if let Some(Factor::Quotient(e)) = out.rhs.factors.iter_mut().find(|f| matches!(f, Factor::Quotient(_))) {
            *e = Expr::Add(Box::new(e.clone()), Box::new(Expr::Int(BigInt::from(1))));
        }
        out
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Result<BTreeMap<String, Rational>, MatrixError> {
        let mut env = BTreeMap::new();
        for s in &self.symbols {
            let value = if let Some(d) = &s.derived {
                d.eval(&env).map_err(|e| self.undefined(&env, e))?
            } else {
                let k = Rational::from_integer(BigInt::from(rng.gen_range(s.lo..=s.hi)));
                match &s.multiple_of {
                    Some(m) => k * m.eval(&env).map_err(|e| self.undefined(&env, e))?,
                    None => k,
                }
            };
            env.insert(s.name.clone(), value);
        }
        Ok(env)
    }

    fn undefined(&self, env: &BTreeMap<String, Rational>, source: ExprError) -> MatrixError {
        MatrixError::Undefined { identity: self.name.clone(), assignment: format_env(env), source }
    }
}

fn format_env(env: &BTreeMap<String, Rational>) -> String {
    let parts: Vec<String> = env.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(", ")
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum CheckOutcome {
    Pass { samples: usize },
    Fail { assignment: BTreeMap<String, Rational>, lhs: Mat2, rhs: Mat2 },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Pass { samples } => write!(f, "pass ({samples} samples)"),
            CheckOutcome::Fail { assignment, lhs, rhs } => {
                write!(f, "fail at {}: lhs {lhs} != rhs {rhs}", format_env(assignment))
            }
        }
    }
}

/// Compares both products exactly on `samples` seeded random assignments and
/// returns the first (by sample index) counterexample.
pub fn matrix_word_check(identity: &MatrixIdentity, samples: usize, seed: u64) -> Result<CheckOutcome, MatrixError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let envs = (0..samples).map(|_| identity.sample(&mut rng)).collect::<Result<Vec<_>, _>>()?;
    let results: Vec<Result<Option<CheckOutcome>, MatrixError>> = envs
        .into_par_iter()
        .map(|env| {
            let lhs = identity.lhs.eval(&env).map_err(|e| identity.undefined(&env, e))?;
            let rhs = identity.rhs.eval(&env).map_err(|e| identity.undefined(&env, e))?;
            Ok((lhs != rhs).then_some(CheckOutcome::Fail { assignment: env, lhs, rhs }))
        })
        .collect();
    for r in results {
        if let Some(fail) = r? {
            return Ok(fail);
        }
    }
    Ok(CheckOutcome::Pass { samples })
}

/// The identities shipped in `fixtures/identities.txt`.
pub fn builtin_identities() -> Vec<MatrixIdentity> {
    parse_identities(include_str!("../../fixtures/identities.txt")).expect("bundled fixtures parse")
}

/// Parses the fixture format:
///
/// ```text
/// identity split_v_single
/// sym v in 2..9
/// sym a in 1..9 where v | a
/// let w = v + 1
/// lhs R(1,-1;0,v) Q(a)
/// rhs Q(a/v-1) Q(1) Q(v-1) R(1,-1;0,v)
/// expect fail
/// ```
///
/// `where D | a` samples `a = k*D`. `#` starts a comment.
pub fn parse_identities(text: &str) -> Result<Vec<MatrixIdentity>, MatrixError> {
    let mut out: Vec<MatrixIdentity> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if kw == "identity" {
            if rest.is_empty() {
                return syntax(line_no, "identity needs a name");
            }
            out.push(MatrixIdentity {
                name: rest.to_string(),
                symbols: Vec::new(),
                lhs: MatrixWord::default(),
                rhs: MatrixWord::default(),
                expect_fail: false,
            });
            continue;
        }
        let Some(cur) = out.last_mut() else {
            return syntax(line_no, "expected 'identity NAME' first");
        };
        match kw {
            "sym" => cur.symbols.push(parse_sym(rest).or_else(|m| syntax(line_no, m))?),
            "let" => {
                let Some((name, e)) = rest.split_once('=') else {
                    return syntax(line_no, "let needs NAME = EXPR");
                };
                let derived = parse_expr(e).or_else(|err| syntax(line_no, err.to_string()))?;
                cur.symbols.push(SymbolDecl {
                    name: name.trim().to_string(),
                    lo: 0,
                    hi: 0,
                    multiple_of: None,
                    derived: Some(derived),
                });
            }
            "lhs" => cur.lhs = MatrixWord::parse(rest).or_else(|m| syntax(line_no, m))?,
            "rhs" => cur.rhs = MatrixWord::parse(rest).or_else(|m| syntax(line_no, m))?,
            "expect" if rest == "fail" => cur.expect_fail = true,
            other => return syntax(line_no, format!("unknown keyword {other:?}")),
        }
    }
    for id in &out {
        validate(id)?;
    }
    Ok(out)
}

fn parse_sym(rest: &str) -> Result<SymbolDecl, String> {
    let (head, constraint) = match rest.split_once(" where ") {
        Some((h, c)) => (h, Some(c)),
        None => (rest, None),
    };
    let mut it = head.split_whitespace();
    let (Some(name), Some("in"), Some(range), None) = (it.next(), it.next(), it.next(), it.next()) else {
        return Err(format!("expected 'sym NAME in LO..HI', got {rest:?}"));
    };
    let (lo, hi) = range.split_once("..").ok_or_else(|| format!("bad range {range:?}"))?;
    let lo: i64 = lo.parse().map_err(|_| format!("bad range {range:?}"))?;
    let hi: i64 = hi.parse().map_err(|_| format!("bad range {range:?}"))?;
    if lo > hi {
        return Err(format!("empty range {range:?}"));
    }
    let multiple_of = match constraint {
        None => None,
        Some(c) => {
            let (d, target) = c.split_once('|').ok_or_else(|| format!("constraint must be 'D | {name}'"))?;
            if target.trim() != name {
                return Err(format!("constraint {c:?} must constrain {name}"));
            }
            Some(parse_expr(d).map_err(|e| e.to_string())?)
        }
    };
    Ok(SymbolDecl { name: name.to_string(), lo, hi, multiple_of, derived: None })
}

/// Every symbol used in the words must be declared before use.
fn validate(id: &MatrixIdentity) -> Result<(), MatrixError> {
    let err = |msg: String| Err(MatrixError::Declaration { identity: id.name.clone(), msg });
    if id.lhs.factors.is_empty() || id.rhs.factors.is_empty() {
        return err("both lhs and rhs are required".into());
    }
    let mut declared: Vec<&str> = Vec::new();
    for s in &id.symbols {
        for e in s.multiple_of.iter().chain(s.derived.iter()) {
            for used in e.symbols() {
                if !declared.contains(&used.as_str()) {
                    return err(format!("{used} used before declaration in {}", s.name));
                }
            }
        }
        declared.push(&s.name);
    }
    for word in [&id.lhs, &id.rhs] {
        for f in &word.factors {
            let exprs: Vec<&Expr> = match f {
                Factor::Quotient(x) => vec![x],
                Factor::Upper { r, t, s } => vec![r, t, s],
            };
            for e in exprs {
                for used in e.symbols() {
                    if !declared.contains(&used.as_str()) {
                        return err(format!("undeclared symbol {used}"));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLE: &str = "
identity split_v_single
sym v in 2..9
sym a in 1..9 where v | a
lhs R(1,-1;0,v) Q(a)
rhs Q(a/v-1) Q(1) Q(v-1) R(1,-1;0,v)
";

    #[test]
    fn bundled_identities() {
        for id in builtin_identities() {
            let out = matrix_word_check(&id, 100, 11).unwrap();
            assert_eq!(out.passed(), !id.expect_fail, "{}: {out}", id.name);
        }
    }

    #[test]
    fn parses_and_passes() {
        let ids = parse_identities(SIMPLE).unwrap();
        assert_eq!(ids.len(), 1);
        let out = matrix_word_check(&ids[0], 100, 7).unwrap();
        assert_eq!(out, CheckOutcome::Pass { samples: 100 });
    }

    #[test]
    fn perturbation_fails_with_counterexample() {
        let id = parse_identities(SIMPLE).unwrap().remove(0).perturbed();
        let out = matrix_word_check(&id, 100, 7).unwrap();
        let CheckOutcome::Fail { assignment, lhs, rhs } = out else { panic!("control passed") };
        assert!(assignment.contains_key("v"));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn syntax_errors_name_the_line() {
        let bad = "identity x\nsym v in 9..2\n";
        assert!(matches!(parse_identities(bad), Err(MatrixError::Syntax { line: 2, .. })));
        let undeclared = "identity x\nlhs Q(w)\nrhs Q(w)\n";
        assert!(matches!(parse_identities(undeclared), Err(MatrixError::Declaration { .. })));
        assert!(MatrixWord::parse("R(1,2;3,4)").is_err());
    }

    #[test]
    fn zero_denominator_is_reported() {
        let t = "identity z\nsym v in 0..0\nlhs Q(1/v)\nrhs Q(1)\n";
        let id = parse_identities(t).unwrap().remove(0);
        assert!(matches!(matrix_word_check(&id, 3, 1), Err(MatrixError::Undefined { .. })));
    }
}
