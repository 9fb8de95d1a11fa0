use std::sync::Arc;

use crate::cf::{CfError, GeneralizedCF};
use crate::numerics::Scalar;

type Pair<T> = (T, T);

fn need<T: Scalar>(g: &GeneralizedCF<T>, n: usize) -> Result<Option<Pair<T>>, CfError> {
    g.term(n)
}

fn nonzero_b<T: Scalar>(b: &T, index: usize) -> Result<(), CfError> {
    if b.is_zero() {
        return Err(CfError::ZeroPartialDenominator { index });
    }
    Ok(())
}

/// Even part: approximant `k` of the result equals approximant `2k` of the
/// input. Requires every consumed `b_{2k} != 0`.
///
/// ```text
/// b0 + b2 a1/(b2 b1 + a2) - (a2 a3 b4/b2)/(a4 + b3 b4 + a3 b4/b2) - ...
/// ```
///
/// An input with an odd number of terms loses its last one.
pub fn even_part<T: Scalar>(gcf: &GeneralizedCF<T>) -> GeneralizedCF<T> {
    let g = gcf.clone();
    GeneralizedCF::new(gcf.b0().clone(), move |k| {
        let (Some((a_odd, b_odd)), Some((a_even, b_even))) = (need(&g, 2 * k - 1)?, need(&g, 2 * k)?) else {
            return Ok(None);
        };
        nonzero_b(&b_even, 2 * k)?;
        if k == 1 {
            let c = b_even.try_mul(&a_odd)?;
            let d = b_even.try_mul(&b_odd)?.try_add(&a_even)?;
            return Ok(Some((c, d)));
        }
        let (a_prev, b_prev) = need(&g, 2 * k - 2)?.expect("earlier term exists");
        nonzero_b(&b_prev, 2 * k - 2)?;
        let c = a_prev.try_mul(&a_odd)?.try_mul(&b_even)?.try_div(&b_prev)?.neg();
        let d = a_even.try_add(&b_odd.try_mul(&b_even)?)?.try_add(&a_odd.try_mul(&b_even)?.try_div(&b_prev)?)?;
        Ok(Some((c, d)))
    })
}

/// Odd part: constant `(b0 b1 + a1)/b1`, approximant `k >= 1` equal to input
/// approximant `2k + 1`. Requires every consumed `b_{2k+1} != 0`.
///
/// The first denominator is scaled by `b1`, which puts an extra `b1` in the
/// second numerator:
///
/// ```text
/// (b0 b1 + a1)/b1 - (a1 a2 b3/b1)/(b1(a3 + b2 b3) + a2 b3)
///     - (a3 a4 b5 b1/b3)/(a5 + b4 b5 + a4 b5/b3) - (a5 a6 b7/b5)/(...) - ...
/// ```
pub fn odd_part<T: Scalar>(gcf: &GeneralizedCF<T>) -> Result<GeneralizedCF<T>, CfError> {
    let Some((a1, b1)) = gcf.term(1)? else {
        return Ok(GeneralizedCF::finite(gcf.b0().clone(), Vec::new()));
    };
    nonzero_b(&b1, 1)?;
    let b0 = gcf.b0().try_mul(&b1)?.try_add(&a1)?.try_div(&b1)?;
    let g = gcf.clone();
    Ok(GeneralizedCF::new(b0, move |k| {
        let (Some((a_even, b_even)), Some((a_next, b_next))) = (need(&g, 2 * k)?, need(&g, 2 * k + 1)?) else {
            return Ok(None);
        };
        nonzero_b(&b_next, 2 * k + 1)?;
        let (a_prev, b_prev) = need(&g, 2 * k - 1)?.expect("earlier term exists");
        nonzero_b(&b_prev, 2 * k - 1)?;
        let c = a_prev.try_mul(&a_even)?.try_mul(&b_next)?.try_div(&b_prev)?.neg();
        if k == 1 {
            // b_prev = b1 here
            let d = b_prev.try_mul(&a_next.try_add(&b_even.try_mul(&b_next)?)?)?.try_add(&a_even.try_mul(&b_next)?)?;
            return Ok(Some((c, d)));
        }
        let d = a_next.try_add(&b_even.try_mul(&b_next)?)?.try_add(&a_even.try_mul(&b_next)?.try_div(&b_prev)?)?;
        let c = if k == 2 {
            let (_, b1) = need(&g, 1)?.expect("first term exists");
            c.try_mul(&b1)?
        } else {
            c
        };
        Ok(Some((c, d)))
    }))
}

/// `c1 + c1 c2/1 + c2 c3/1 + c3 c4/1 + ...`, the odd part of
/// `c1/1 - c2/1 + c2/1 - c3/1 + c3/1 - ...`. `c` is 1-based.
pub fn odd_part_doubled<T, F>(c: F) -> Result<GeneralizedCF<T>, CfError>
where
    T: Scalar,
    F: Fn(usize) -> Option<T> + Send + Sync + 'static,
{
    let c1 = c(1).ok_or(CfError::Exhausted { requested: 1, available: 0 })?;
    if c1.is_zero() {
        return Err(CfError::ZeroSequenceElement(1));
    }
    let c = Arc::new(c);
    Ok(GeneralizedCF::new(c1, move |k| {
        let (Some(x), Some(y)) = (c(k), c(k + 1)) else {
            return Ok(None);
        };
        if x.is_zero() {
            return Err(CfError::ZeroSequenceElement(k));
        }
        if y.is_zero() {
            return Err(CfError::ZeroSequenceElement(k + 1));
        }
        Ok(Some((x.try_mul(&y)?, T::one())))
    }))
}

/// `0 + c1/1 - c2/1 + c2/1 - c3/1 + c3/1 - ...`; for a finite `c` of length
/// `L` the fraction has `2L - 1` terms.
pub fn doubling_embed<T, F>(c: F) -> GeneralizedCF<T>
where
    T: Scalar,
    F: Fn(usize) -> Option<T> + Send + Sync + 'static,
{
    GeneralizedCF::from_fn(T::zero(), move |n| {
        let a = if n == 1 {
            c(1)?
        } else if n % 2 == 0 {
            c(n / 2 + 1)?.neg()
        } else {
            c(n / 2 + 1)?
        };
        Some((a, T::one()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::eval_gcf;
    use crate::numerics::{rat, Rational};

    fn ones() -> GeneralizedCF<Rational> {
        GeneralizedCF::from_fn(rat(0, 1), |_| Some((rat(1, 1), rat(1, 1))))
    }

    #[test]
    fn fibonacci_parts() {
        let g = ones();
        let e = even_part(&g);
        let o = odd_part(&g).unwrap();
        for k in 0..6 {
            assert_eq!(eval_gcf(&e, k).unwrap(), eval_gcf(&g, 2 * k).unwrap());
            assert_eq!(eval_gcf(&o, k).unwrap(), eval_gcf(&g, 2 * k + 1).unwrap());
        }
        assert_eq!(eval_gcf(&e, 3).unwrap(), rat(8, 13));
    }

    #[test]
    fn single_term_edge_cases() {
        let g = GeneralizedCF::finite(rat(0, 1), vec![(rat(3, 1), rat(2, 1))]);
        assert_eq!(eval_gcf(&odd_part(&g).unwrap(), 0).unwrap(), rat(3, 2));
        let e = even_part(&g);
        assert_eq!(eval_gcf(&e, 0).unwrap(), rat(0, 1));
        assert!(e.term(1).unwrap().is_none());
    }

    #[test]
    fn zero_even_denominator() {
        let g = GeneralizedCF::finite(rat(0, 1), vec![(rat(1, 1), rat(1, 1)), (rat(1, 1), rat(0, 1))]);
        assert_eq!(even_part(&g).term(1), Err(CfError::ZeroPartialDenominator { index: 2 }));
    }

    #[test]
    fn doubled_shortcut_matches_generic_odd_part() {
        let c = |n: usize| (n <= 10).then(|| rat(1, 5));
        let short = odd_part_doubled(c).unwrap();
        let generic = odd_part(&doubling_embed(c)).unwrap();
        for k in 0..10 {
            assert_eq!(eval_gcf(&short, k).unwrap(), eval_gcf(&generic, k).unwrap());
        }
    }
}
