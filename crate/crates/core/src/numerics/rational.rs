use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::NumericsError;

/// Exact rational with a positive, reduced denominator.
pub type Rational = BigRational;

/// Shorthand for `n/d` with machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"n"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational, NumericsError> {
    let s = text.trim();
    let err = || NumericsError::Parse(text.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Formats as `"p/q"`, or `"n"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("6/13").unwrap(), rat(6, 13));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rat(10, 4)), "5/2");
        assert_eq!(format_rational(&rat(-3, 1)), "-3");
    }
}
