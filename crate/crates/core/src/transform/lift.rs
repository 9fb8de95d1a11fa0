use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::worpitzky_check_range;
use crate::cf::{CfError, GeneralizedCF, QuotientSource, RegularCF};
use crate::numerics::Rational;

/// Indices of the unit-denominator form inspected by the convergence guard.
///
/// The leading terms may legitimately leave the Worpitzky disk (for example
/// `1/p` itself when `p < 4`); convergence of a tail is equivalent to
/// convergence of the whole fraction, so only a tail window is checked.
pub const LIFT_GUARD_WINDOW: RangeInclusive<usize> = 26..=50;

struct LiftSource {
    p: BigInt,
    p2: BigInt,
    base: RegularCF,
}

impl QuotientSource for LiftSource {
    fn quotient(&self, i: usize) -> Result<Option<BigInt>, CfError> {
        if i == 0 {
            return Ok(Some(BigInt::zero()));
        }
        let block = (i - 1) / 4;
        let q = match (i - 1) % 4 {
            0 => self.base.quotient(2 * block)?.map(|_| self.p.clone()),
            1 => match self.base.quotient(2 * block + 1)? {
                None => None,
                Some(a) => {
                    let (quo, rem) = a.div_rem(&self.p2);
                    if !rem.is_zero() {
                        return Err(CfError::Divisibility { index: 2 * block + 1, value: a, p2: self.p2.clone() });
                    }
                    Some(-quo)
                }
            },
            2 => self.base.quotient(2 * block + 1)?.map(|_| -&self.p),
            _ => self.base.quotient(2 * block + 2)?,
        };
        Ok(q)
    }
}

/// `1/p/1 - (p/a1)/1 + (p/a1)/1 - (1/(p a2))/1 + (1/(p a2))/1 - ...`, whose
/// odd part is `1/p + [0; a1, a2, ...]`.
fn doubled_form(p: &BigInt, base: &RegularCF) -> GeneralizedCF<Rational> {
    let p = Rational::from_integer(p.clone());
    let base = base.clone();
    let one = Rational::one();
    GeneralizedCF::new(Rational::zero(), move |k| {
        if k == 1 {
            return Ok(Some((p.recip(), one.clone())));
        }
        let n = k / 2;
        let Some(a) = base.quotient(n)? else {
            return Ok(None);
        };
        let a = Rational::from_integer(a);
        if a.is_zero() {
            return Err(CfError::Convergence { index: k, value: "infinity".into() });
        }
        let t = if n % 2 == 1 { &p / a } else { (&p * a).recip() };
        Ok(Some((if k % 2 == 0 { -t } else { t }, one.clone())))
    })
}

/// `[0; p, -a1/p^2, -p, a2, p, -a3/p^2, -p, a4, ...]`, whose value is
/// `1/p + [0; a1, a2, ...]`.
///
/// The result is signed; pipe it through [`crate::cf::regularize`].
/// Divisibility of the odd-indexed `a` by `p^2` is checked as quotients are
/// read. A finite base of length `L` yields the first `2L + 1` lifted
/// quotients.
pub fn corfl_lift(p: &BigInt, rcf: &RegularCF) -> Result<RegularCF, CfError> {
    if p < &BigInt::from(2) {
        return Err(CfError::LiftParameter(p.clone()));
    }
    let head = rcf.head()?;
    if !head.is_zero() {
        return Err(CfError::LiftHead(head));
    }
    let guard = worpitzky_check_range(&doubled_form(p, rcf), LIFT_GUARD_WINDOW)?;
    if let Some(index) = guard.witness {
        let (a, _) = doubled_form(p, rcf).term(index)?.expect("witness term exists");
        return Err(CfError::Convergence { index, value: a.to_string() });
    }
    Ok(RegularCF::from_source(Arc::new(LiftSource { p: p.clone(), p2: p * p, base: rcf.clone() })))
}

/// Effective lift parameters: the last stage lifts by `p_n`, and each earlier
/// stage by `p_i * s_{i+1}^2`, so later stages recover the earlier `p_i`.
fn stage_parameters(ps: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); ps.len()];
    let mut next: Option<BigInt> = None;
    for (i, p) in ps.iter().enumerate().rev() {
        let s = match &next {
            Some(n) => p * n * n,
            None => p.clone(),
        };
        out[i] = s.clone();
        next = Some(s);
    }
    out
}

/// `Σ 1/s_i` over the effective stage parameters.
pub fn lift_offset(ps: &[BigInt]) -> Rational {
    stage_parameters(ps).into_iter().map(|s| Rational::new(BigInt::one(), s)).sum()
}

/// Applies [`corfl_lift`] once per entry of `ps`, first to last.
///
/// With `ps = [p, q, r]` the stages lift by `p q^2 r^4`, `q r^2` and `r`,
/// which is the same as lifting by `p` and then substituting `p -> p q^2`,
/// `q -> q r^2`. The value of the result is `lift_offset(ps)` plus the value
/// of `rcf`. Stage errors carry their 0-based stage index.
pub fn iterated_lift(ps: &[BigInt], rcf: &RegularCF) -> Result<RegularCF, CfError> {
    let mut cur = rcf.clone();
    for (stage, s) in stage_parameters(ps).iter().enumerate() {
        cur = corfl_lift(s, &cur).map_err(|e| CfError::Stage { stage, source: Box::new(e) })?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{eval_finite, regularize_finite};
    use crate::numerics::rat;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn finite_lift_adds_one_over_p() {
        let base = b(&[0, 4, 3, 8, 9]);
        let lifted = corfl_lift(&BigInt::from(2), &RegularCF::from_quotients(base.clone())).unwrap();
        let q = lifted.prefix(100).unwrap();
        assert_eq!(q.len(), 2 * 4 + 2);
        let v = eval_finite(&q).unwrap();
        assert_eq!(v, eval_finite(&base).unwrap() + rat(1, 2));
        let reg = regularize_finite(&q).unwrap();
        assert_eq!(eval_finite(&reg).unwrap(), v);
    }

    #[test]
    fn preconditions() {
        let base = RegularCF::from_i64s(&[0, 4, 3]);
        assert_eq!(corfl_lift(&BigInt::from(1), &base).unwrap_err(), CfError::LiftParameter(BigInt::from(1)));
        let bad = RegularCF::from_i64s(&[0, 6, 3]);
        let lifted = corfl_lift(&BigInt::from(2), &bad).unwrap();
        assert!(matches!(lifted.quotient(2), Err(CfError::Divisibility { index: 1, .. })));
        let head = RegularCF::from_i64s(&[1, 4]);
        assert!(matches!(corfl_lift(&BigInt::from(2), &head), Err(CfError::LiftHead(_))));
    }

    #[test]
    fn convergence_guard_trips_on_small_quotients() {
        // constant quotients 4 leave p/a = 1/2 outside the disk forever
        let base = RegularCF::from_fn(|i| Some(BigInt::from(if i == 0 { 0 } else { 4 })));
        assert!(matches!(corfl_lift(&BigInt::from(2), &base), Err(CfError::Convergence { .. })));
    }

    #[test]
    fn stage_parameters_compose() {
        let ps = b(&[2, 2, 3]);
        assert_eq!(stage_parameters(&ps), b(&[2 * 4 * 81, 2 * 9, 3]));
        assert_eq!(lift_offset(&ps), rat(1, 648) + rat(1, 18) + rat(1, 3));
        assert!(stage_parameters(&[]).is_empty());
    }
}
