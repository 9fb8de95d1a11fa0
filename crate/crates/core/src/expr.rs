//! Small arithmetic expression language shared by matrix-word fixtures and the
//! `expand` front end.
//!
//! Grammar: integers, identifiers, `+ - * / ^`, parentheses and calls
//! `name(arg, ...)`. Arguments may be `key=value` pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::numerics::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Vec<Arg>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Positional(Expr),
    Named(String, Expr),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent must be a small integer, got {0}")]
    BadExponent(String),
    #[error("function {0:?} cannot be evaluated as a rational")]
    NotRational(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Int(BigInt::from_str(&text).expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|p| p.1).collect())));
        } else if "+-*/^(),=".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Parse { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            // right associative, binds tighter than unary minus on the left
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if self.eat('(') {
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.arg()?);
                            if self.eat(')') {
                                break;
                            }
                            if !self.eat(',') {
                                return self.err("expected ',' or ')'");
                            }
                        }
                    }
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Sym(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn arg(&mut self) -> Result<Arg, ExprError> {
        if let (Some(Tok::Ident(name)), Some((_, Tok::Op('=')))) = (self.peek().cloned(), self.toks.get(self.at + 1)) {
            self.at += 2;
            return Ok(Arg::Named(name, self.expr()?));
        }
        Ok(Arg::Positional(self.expr()?))
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(s)?, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Rational value under `env`; calls are rejected.
    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Rational, ExprError> {
        Ok(match self {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Sym(s) => env.get(s).cloned().ok_or_else(|| ExprError::UnknownSymbol(s.clone()))?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.eval(env)? / d
            }
            Expr::Pow(a, b) => {
                let e = b.eval(env)?;
                let k = e
                    .is_integer()
                    .then(|| e.to_integer().to_i32())
                    .flatten()
                    .filter(|k| k.abs() <= 4096)
                    .ok_or_else(|| ExprError::BadExponent(e.to_string()))?;
                let base = a.eval(env)?;
                if base.is_zero() && k.is_negative() {
                    return Err(ExprError::DivisionByZero);
                }
                base.pow(k)
            }
            Expr::Call(name, _) => return Err(ExprError::NotRational(name.clone())),
        })
    }

    /// Symbols referenced, in first-appearance order.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Sym(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Neg(a) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Expr::Call(_, args) => {
                for a in args {
                    match a {
                        Arg::Positional(e) | Arg::Named(_, e) => e.collect(out),
                    }
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => f.write_str(s),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, b) => write!(f, "{a}^{b}"),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    match a {
                        Arg::Positional(e) => write!(f, "{e}")?,
                        Arg::Named(k, e) => write!(f, "{k}={e}")?,
                    }
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn env(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), rat(*v, 1))).collect()
    }

    #[test]
    fn precedence() {
        let e = parse_expr("a1/v^2 - 1").unwrap();
        assert_eq!(e.eval(&env(&[("a1", 18), ("v", 3)])).unwrap(), rat(1, 1));
        let e = parse_expr("-2^2 + (1 - 3)*4").unwrap();
        assert_eq!(e.eval(&env(&[])).unwrap(), rat(-12, 1));
        assert_eq!(parse_expr("v - v^2").unwrap().symbols(), vec!["v".to_string()]);
    }

    #[test]
    fn calls_and_named_args() {
        let e = parse_expr("closed_form(tas3, e=1, f=1/2)").unwrap();
        let Expr::Call(name, args) = e else { panic!() };
        assert_eq!(name, "closed_form");
        assert_eq!(args.len(), 3);
        assert!(matches!(&args[1], Arg::Named(k, _) if k == "e"));
    }

    #[test]
    fn errors() {
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("1 $ 2").is_err());
        assert_eq!(parse_expr("1/(v-2)").unwrap().eval(&env(&[("v", 2)])), Err(ExprError::DivisionByZero));
    }
}
