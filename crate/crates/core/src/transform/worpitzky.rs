use std::ops::RangeInclusive;

use num_traits::{Signed, Zero};

use crate::cf::{CfError, GeneralizedCF};
use crate::numerics::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorpitzkyResult {
    pub ok: bool,
    /// First index with `|a_n| > 1/4`.
    pub witness: Option<usize>,
    /// Number of terms actually inspected (a finite fraction may end early).
    pub checked: usize,
}

/// Rewrites `b0 + K(a_n/b_n)` as `b0 + K(a'_n/1)` with
/// `a'_1 = a_1/b_1`, `a'_n = a_n/(b_{n-1} b_n)`.
pub fn unit_denominator_form(gcf: &GeneralizedCF<Rational>) -> GeneralizedCF<Rational> {
    let g = gcf.clone();
    GeneralizedCF::new(gcf.b0().clone(), move |n| {
        let Some((a, b)) = g.term(n)? else {
            return Ok(None);
        };
        if b.is_zero() {
            return Err(CfError::ZeroScale(n));
        }
        let mut scale = b;
        if n > 1 {
            let (_, prev) = g.term(n - 1)?.expect("earlier term exists");
            if prev.is_zero() {
                return Err(CfError::ZeroScale(n - 1));
            }
            scale *= prev;
        }
        Ok(Some((a / scale, rat(1, 1))))
    })
}

/// `|a_n| <= 1/4` for `n = 1..=n` after normalizing to unit denominators.
pub fn worpitzky_check(gcf: &GeneralizedCF<Rational>, n: usize) -> Result<WorpitzkyResult, CfError> {
    worpitzky_check_range(gcf, 1..=n)
}

/// As [`worpitzky_check`] over an index window. A tail `K_{n>=N}` that passes
/// converges, and so does the whole fraction provided its head is finite.
pub fn worpitzky_check_range(
    gcf: &GeneralizedCF<Rational>,
    range: RangeInclusive<usize>,
) -> Result<WorpitzkyResult, CfError> {
    let unit = unit_denominator_form(gcf);
    let quarter = rat(1, 4);
    let mut checked = 0;
    for n in range {
        let Some((a, _)) = unit.term(n)? else {
            break;
        };
        checked += 1;
        if a.abs() > quarter {
            return Ok(WorpitzkyResult { ok: false, witness: Some(n), checked });
        }
    }
    Ok(WorpitzkyResult { ok: true, witness: None, checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_boundary() {
        let fifth = GeneralizedCF::from_fn(rat(0, 1), |_| Some((rat(1, 5), rat(1, 1))));
        assert!(worpitzky_check(&fifth, 50).unwrap().ok);
        let quarter = GeneralizedCF::from_fn(rat(0, 1), |_| Some((rat(1, 4), rat(1, 1))));
        assert!(worpitzky_check(&quarter, 50).unwrap().ok);
        let over = GeneralizedCF::from_fn(rat(0, 1), |n| Some((rat(1, 1) / (rat(4, 1) - rat(1, n as i64)), rat(1, 1))));
        let r = worpitzky_check(&over, 50).unwrap();
        assert_eq!((r.ok, r.witness), (false, Some(1)));
    }

    #[test]
    fn normalization() {
        // a_n = 1, b_n = 2 is K(1/4 / 1) after scaling
        let g = GeneralizedCF::from_fn(rat(0, 1), |_| Some((rat(1, 1), rat(2, 1))));
        let r = worpitzky_check_range(&g, 2..=20).unwrap();
        assert!(r.ok);
        assert_eq!(r.checked, 19);
        assert_eq!(worpitzky_check(&g, 20).unwrap().witness, Some(1));
        let a1 = unit_denominator_form(&g).term(1).unwrap().unwrap().0;
        assert_eq!(a1, rat(1, 2));
    }
}
