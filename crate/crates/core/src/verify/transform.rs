use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cf::{
    approximants, eval_finite, format_cf_literal, format_gcf_literal, parse_cf_literal, parse_gcf_literal,
    regularize_finite, CfError, GeneralizedCF, RegularCF,
};
use crate::numerics::{format_rational, Rational};
use crate::transform::{corfl_lift, even_part, odd_part};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Even,
    Odd,
    Lift,
    Regularize,
}

impl FromStr for TransformKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even" => Ok(TransformKind::Even),
            "odd" => Ok(TransformKind::Odd),
            "lift" => Ok(TransformKind::Lift),
            "regularize" => Ok(TransformKind::Regularize),
            other => Err(format!("unknown transform {other:?} (expected even, odd, lift or regularize)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error("lift needs --p")]
    MissingP,
    #[error("audit failed: {0}")]
    Audit(String),
}

/// Result of a transform with the exact values used to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformOutput {
    /// Intermediate signed literal, for `lift`.
    pub signed: Option<String>,
    pub output: String,
    /// Audit lines, e.g. `value 6/5 = 6/5`.
    pub audit: Vec<String>,
}

impl fmt::Display for TransformOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = &self.signed {
            writeln!(f, "signed: {s}")?;
        }
        writeln!(f, "{}", self.output)?;
        for line in &self.audit {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

/// Accepts a generalized literal `[b0; (a1, b1), ...]` or a regular one.
fn parse_any_gcf(text: &str) -> Result<(Rational, Vec<(Rational, Rational)>), CfError> {
    if text.contains('(') {
        return parse_gcf_literal(text);
    }
    let lit = parse_cf_literal(text)?;
    let mut qs = lit.quotients.into_iter().map(Rational::from_integer);
    let b0 = qs.next().expect("literal has a head");
    Ok((b0, qs.map(|q| (Rational::from_integer(1.into()), q)).collect()))
}

fn contraction(text: &str, odd: bool) -> Result<TransformOutput, TransformError> {
    let (b0, terms) = parse_any_gcf(text)?;
    let n = terms.len();
    let input = GeneralizedCF::finite(b0, terms);
    let out = if odd { odd_part(&input)? } else { even_part(&input) };
    let out_terms = out.prefix(n)?;
    let k_max = out_terms.len();
    let before = approximants(&input, n)?;
    let after = approximants(&GeneralizedCF::finite(out.b0().clone(), out_terms.clone()), k_max)?;
    let mut audit = Vec::new();
    for (k, (a, b)) in after.iter().enumerate() {
        let j = if odd { 2 * k + 1 } else { 2 * k };
        if j > n {
            break;
        }
        let (c, d) = &before[j];
        // compare A/B by cross-multiplication so zero denominators still compare
        if a * d != b * c {
            return Err(TransformError::Audit(format!("approximant {k} differs from input approximant {j}")));
        }
        if !b.is_zero() {
            audit.push(format!("approximant {k} = input approximant {j} = {}", r(&(a / b))));
        } else {
            audit.push(format!("approximant {k} = input approximant {j} (denominator 0)"));
        }
    }
    Ok(TransformOutput { signed: None, output: format_gcf_literal(out.b0(), &out_terms), audit })
}

fn regularize_literal(text: &str) -> Result<TransformOutput, TransformError> {
    let lit = parse_cf_literal(text)?;
    let before = eval_finite(&lit.quotients)?;
    let out = regularize_finite(&lit.quotients)?;
    let after = eval_finite(&out)?;
    if before != after {
        return Err(TransformError::Audit(format!("value {} became {}", r(&before), r(&after))));
    }
    Ok(TransformOutput {
        signed: None,
        output: format_cf_literal(&out, false),
        audit: vec![format!("value {} = {}", r(&before), r(&after))],
    })
}

fn lift_literal(text: &str, p: &BigInt) -> Result<TransformOutput, TransformError> {
    let lit = parse_cf_literal(text)?;
    let base = eval_finite(&lit.quotients)?;
    let lifted = corfl_lift(p, &RegularCF::from_quotients(lit.quotients.clone()))?;
    // a base of L quotients lifts to at most 2L + 1
    let signed = lifted.prefix(2 * lit.quotients.len() + 2)?;
    let signed_value = eval_finite(&signed)?;
    let regular = regularize_finite(&signed)?;
    let value = eval_finite(&regular)?;
    let offset = Rational::new(BigInt::from(1), p.clone());
    if value != signed_value || &value - &base != offset {
        return Err(TransformError::Audit(format!(
            "lifted value {} minus base value {} is not 1/{p}",
            r(&value),
            r(&base)
        )));
    }
    Ok(TransformOutput {
        signed: Some(format_cf_literal(&signed, false)),
        output: format_cf_literal(&regular, false),
        audit: vec![format!("value {} - {} = 1/{p}", r(&value), r(&base))],
    })
}

pub fn run_transform(kind: TransformKind, input: &str, p: Option<&BigInt>) -> Result<TransformOutput, TransformError> {
    match kind {
        TransformKind::Even => contraction(input, false),
        TransformKind::Odd => contraction(input, true),
        TransformKind::Regularize => regularize_literal(input),
        TransformKind::Lift => lift_literal(input, p.ok_or(TransformError::MissingP)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularize_example() {
        let out = run_transform(TransformKind::Regularize, "[1,2,0,3]", None).unwrap();
        assert_eq!(out.output, "[1; 5]");
        assert_eq!(out.audit, vec!["value 6/5 = 6/5".to_string()]);
    }

    #[test]
    fn lift_example() {
        let out = run_transform(TransformKind::Lift, "[0;4,3,8,9]", Some(&BigInt::from(2))).unwrap();
        assert_eq!(out.signed.as_deref(), Some("[0; 2, -1, -2, 3, 2, -2, -2, 9, 2]"));
        let v = eval_finite(&parse_cf_literal(&out.output).unwrap().quotients).unwrap();
        let base = eval_finite(&parse_cf_literal("[0;4,3,8,9]").unwrap().quotients).unwrap();
        assert_eq!(v - base, Rational::new(1.into(), 2.into()));
        assert!(matches!(run_transform(TransformKind::Lift, "[0;4]", None), Err(TransformError::MissingP)));
    }

    #[test]
    fn contractions() {
        let out = run_transform(TransformKind::Even, "[0; (1, 1), (2, 3), (1, 2), (4, 1), (1, 1)]", None).unwrap();
        assert_eq!(out.audit.len(), 3);
        let out = run_transform(TransformKind::Odd, "[1; 2, 3, 4, 5, 6]", None).unwrap();
        assert_eq!(out.audit.len(), 3);
        assert!(run_transform(TransformKind::Even, "[0; (1, 1), (1, 0), (1, 1)]", None).is_err());
    }
}
