use std::str::FromStr;

use num_bigint::BigInt;

use super::CfError;
use crate::numerics::{format_rational, parse_rational, Rational};

/// Parsed `[a0; a1, a2, ...]`, with `truncated` set by a trailing `~`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfLiteral {
    pub quotients: Vec<BigInt>,
    pub truncated: bool,
}

fn split_brackets(text: &str) -> Result<(&str, bool), CfError> {
    let err = |m: &str| CfError::Literal(text.to_string(), m.to_string());
    let mut s = text.trim();
    let mut truncated = false;
    if let Some(rest) = s.strip_suffix('~') {
        s = rest.trim_end();
        truncated = true;
    }
    let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| err("expected [...]"))?;
    let inner = inner.trim();
    if let Some(rest) = inner.strip_suffix('~') {
        return Ok((rest.trim_end(), true));
    }
    if let Some(rest) = inner.strip_suffix("...").or_else(|| inner.strip_suffix('…')) {
        let rest = rest.trim_end();
        return Ok((rest.strip_suffix(',').unwrap_or(rest), true));
    }
    Ok((inner, truncated))
}

/// Accepts `[a0; a1, a2]`, `[a0, a1, a2]` and `[a0]`; entries may be signed.
pub fn parse_cf_literal(text: &str) -> Result<CfLiteral, CfError> {
    let err = |m: String| CfError::Literal(text.to_string(), m);
    let (inner, truncated) = split_brackets(text)?;
    let joined = inner.replacen(';', ",", 1);
    let mut quotients = Vec::new();
    for part in joined.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let q = BigInt::from_str(part).map_err(|_| err(format!("bad quotient {part:?}")))?;
        quotients.push(q);
    }
    if quotients.is_empty() {
        return Err(err("missing head".into()));
    }
    Ok(CfLiteral { quotients, truncated })
}

pub fn format_cf_literal(quotients: &[BigInt], truncated: bool) -> String {
    let mut s = String::from("[");
    if let Some((head, tail)) = quotients.split_first() {
        s.push_str(&head.to_string());
        if !tail.is_empty() {
            s.push_str("; ");
            let parts: Vec<String> = tail.iter().map(|q| q.to_string()).collect();
            s.push_str(&parts.join(", "));
        }
    }
    s.push(']');
    if truncated {
        s.push('~');
    }
    s
}

/// Parses `[b0; (a1, b1), (a2, b2), ...]` with rational entries.
pub fn parse_gcf_literal(text: &str) -> Result<(Rational, Vec<(Rational, Rational)>), CfError> {
    let err = |m: String| CfError::Literal(text.to_string(), m);
    let (inner, _) = split_brackets(text)?;
    let (head, rest) = match inner.split_once(';') {
        Some((h, r)) => (h, r),
        None => (inner, ""),
    };
    let b0 = parse_rational(head).map_err(|e| err(e.to_string()))?;
    let mut terms = Vec::new();
    let mut rest = rest.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let body = rest.strip_prefix('(').ok_or_else(|| err(format!("expected '(' at {rest:?}")))?;
        let close = body.find(')').ok_or_else(|| err("unclosed '('".into()))?;
        let (a, b) = body[..close].split_once(',').ok_or_else(|| err("term needs (a, b)".into()))?;
        let a = parse_rational(a).map_err(|e| err(e.to_string()))?;
        let b = parse_rational(b).map_err(|e| err(e.to_string()))?;
        terms.push((a, b));
        rest = body[close + 1..].trim();
    }
    Ok((b0, terms))
}

pub fn format_gcf_literal(b0: &Rational, terms: &[(Rational, Rational)]) -> String {
    let mut s = format!("[{}", format_rational(b0));
    if !terms.is_empty() {
        s.push_str("; ");
        let parts: Vec<String> =
            terms.iter().map(|(a, b)| format!("({}, {})", format_rational(a), format_rational(b))).collect();
        s.push_str(&parts.join(", "));
    }
    s.push(']');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn round_trip() {
        let lit = parse_cf_literal("[0; 1, 2, 3]").unwrap();
        assert_eq!(format_cf_literal(&lit.quotients, lit.truncated), "[0; 1, 2, 3]");
        let lit = parse_cf_literal("[1,2,0,3]").unwrap();
        assert_eq!(lit.quotients.len(), 4);
        let lit = parse_cf_literal("[0; 2, 6, 10]~").unwrap();
        assert!(lit.truncated);
        assert_eq!(format_cf_literal(&lit.quotients, true), "[0; 2, 6, 10]~");
        assert_eq!(format_cf_literal(&parse_cf_literal("[0;]").unwrap().quotients, false), "[0]");
        assert!(parse_cf_literal("0;1").is_err());
        assert!(parse_cf_literal("[a; 1]").is_err());
    }

    #[test]
    fn gcf_literal() {
        let (b0, t) = parse_gcf_literal("[1/2; (1, 3), (-2/3,5)]").unwrap();
        assert_eq!(b0, rat(1, 2));
        assert_eq!(t, vec![(rat(1, 1), rat(3, 1)), (rat(-2, 3), rat(5, 1))]);
        assert_eq!(format_gcf_literal(&b0, &t), "[1/2; (1, 3), (-2/3, 5)]");
    }
}
