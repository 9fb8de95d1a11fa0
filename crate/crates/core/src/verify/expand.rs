use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cf::{format_cf_literal, rcf_expand, CfError, ExpandedQuotient};
use crate::expr::{parse_expr, Arg, Expr, ExprError};
use crate::families::{family, FamilyError, ParamSet};
use crate::numerics::{format_rational, IntervalReal, NumericsError, Rational, Real};
use crate::qseries::{elementary_real, ElementaryFn, SurdArg};

#[derive(Debug, thiserror::Error)]
pub enum ExpandError {
    #[error("cannot parse expression: {0}")]
    Parse(#[from] ExprError),
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

#[derive(Debug, Clone)]
pub struct Expansion {
    /// Head first.
    pub quotients: Vec<BigInt>,
    /// Index of the first quotient that could not be certified.
    pub uncertified_at: Option<usize>,
    pub enclosure: IntervalReal,
    /// Set when the value is rational.
    pub exact: Option<Rational>,
}

impl Expansion {
    pub fn literal(&self) -> String {
        format_cf_literal(&self.quotients, false)
    }
}

fn rational(e: &Expr) -> Result<Rational, ExpandError> {
    Ok(e.eval(&BTreeMap::new())?)
}

/// `r`, `sqrt(n)`, `r*sqrt(n)` or `r/sqrt(n)` for integer `n > 0`.
fn surd(e: &Expr) -> Result<SurdArg, ExpandError> {
    fn sqrt_of(e: &Expr) -> Result<Option<BigInt>, ExpandError> {
        if let Expr::Call(name, args) = e {
            if name == "sqrt" {
                let [Arg::Positional(x)] = args.as_slice() else {
                    return Err(ExpandError::Unsupported("sqrt takes one argument".into()));
                };
                let r = rational(x)?;
                if !r.is_integer() || !r.is_positive() {
                    return Err(ExpandError::Unsupported(format!(
                        "sqrt of {} (need a positive integer)",
                        format_rational(&r)
                    )));
                }
                return Ok(Some(r.to_integer()));
            }
        }
        Ok(None)
    }
    if let Some(n) = sqrt_of(e)? {
        return Ok(SurdArg::new(Rational::one(), n)?);
    }
    match e {
        Expr::Neg(x) => {
            let s = surd(x)?;
            Ok(SurdArg::new(-s.coeff, s.radicand)?)
        }
        Expr::Mul(a, b) => {
            if let Some(n) = sqrt_of(b)? {
                return Ok(SurdArg::new(rational(a)?, n)?);
            }
            if let Some(n) = sqrt_of(a)? {
                return Ok(SurdArg::new(rational(b)?, n)?);
            }
            Ok(SurdArg::rational(rational(e)?))
        }
        Expr::Div(a, b) => match sqrt_of(b)? {
            Some(n) => Ok(SurdArg::over_sqrt(rational(a)?, n)?),
            None => Ok(SurdArg::rational(rational(e)?)),
        },
        _ => Ok(SurdArg::rational(rational(e)?)),
    }
}

/// Value of `closed_form(family, k=v, ...)`, `tan(x)`, `tanh(x)`, `exp(x)`
/// or a rational expression.
pub fn parse_value(text: &str) -> Result<Real, ExpandError> {
    let e = parse_expr(text)?;
    if let Expr::Call(name, args) = &e {
        if name == "closed_form" {
            let Some((Arg::Positional(Expr::Sym(id)), rest)) = args.split_first() else {
                return Err(ExpandError::Unsupported("closed_form(family, k=v, ...) needs a family id first".into()));
            };
            let mut p = ParamSet::new();
            for a in rest {
                match a {
                    Arg::Named(k, v) => p = p.with(k, rational(v)?),
                    Arg::Positional(_) => {
                        return Err(ExpandError::Unsupported("closed_form parameters must be k=v".into()));
                    }
                }
            }
            return Ok(family(id)?.closed_form_real(&p)?);
        }
        if let Ok(f) = name.parse::<ElementaryFn>() {
            let [Arg::Positional(x)] = args.as_slice() else {
                return Err(ExpandError::Unsupported(format!("{name} takes one argument")));
            };
            return Ok(elementary_real(f, &surd(x)?)?);
        }
    }
    Ok(Real::exact(rational(&e)?))
}

/// Certified expansion of `text` to the head plus `terms` quotients, with the
/// value enclosed to `digits`.
pub fn run_expand(text: &str, terms: usize, digits: u32) -> Result<Expansion, ExpandError> {
    let v = parse_value(text)?;
    let out = rcf_expand(&v, terms)?;
    let mut quotients = Vec::new();
    let mut uncertified_at = None;
    for q in out {
        match q {
            ExpandedQuotient::Certified(a) => quotients.push(a),
            ExpandedQuotient::Uncertified { index } => uncertified_at = Some(index),
        }
    }
    Ok(Expansion { quotients, uncertified_at, enclosure: v.enclose(digits)?, exact: v.as_exact().cloned() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(text: &str, terms: usize) -> String {
        run_expand(text, terms, 20).unwrap().literal()
    }

    #[test]
    fn examples() {
        assert_eq!(lit("tanh(1)", 8), "[0; 1, 3, 5, 7, 9, 11, 13, 15]");
        assert_eq!(lit("7/10", 60), "[0; 1, 2, 3]");
        assert_eq!(lit("closed_form(tas3, e=1,f=1,u=2,v=3) ", 6), "[0; 2, 3, 4, 9, 8, 27]");
        assert_eq!(lit("tan(1)", 7), "[1; 1, 1, 3, 1, 5, 1, 7]");
        assert_eq!(lit("exp(1)", 9), "[2; 1, 2, 1, 1, 4, 1, 1, 6, 1]");
    }

    #[test]
    fn surd_arguments() {
        // tanh(1/sqrt(2)) * sqrt(2) = [0; 1, 6, 5, 14, ...] would need the scale;
        // tanh(sqrt(2)) alone just has to expand.
        let e = run_expand("tanh(sqrt(2))", 5, 20).unwrap();
        assert_eq!(e.quotients.len(), 6);
        let e = run_expand("exp(-1/sqrt(4))", 3, 20).unwrap();
        assert_eq!(e.literal(), lit("exp(-1/2)", 3));
        assert!(matches!(run_expand("tanh(sqrt(1/2))", 3, 20), Err(ExpandError::Unsupported(_))));
        assert!(matches!(run_expand("closed_form(nope, a=1)", 3, 20), Err(ExpandError::Family(_))));
    }
}
