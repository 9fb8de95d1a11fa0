use std::fmt;
use std::sync::Arc;

use super::{CfError, RegularCF};
use crate::numerics::{Rational, Scalar};

/// Term generator of a generalized fraction: index `n >= 1` maps to
/// `(a_n, b_n)`, `None` past the end.
pub type TermFn<T> = Arc<dyn Fn(usize) -> Result<Option<(T, T)>, CfError> + Send + Sync>;

/// `b_0 + a_1/(b_1 + a_2/(b_2 + ...))`.
#[derive(Clone)]
pub struct GeneralizedCF<T> {
    b0: T,
    terms: TermFn<T>,
}

impl<T: Scalar> GeneralizedCF<T> {
    pub fn new<F>(b0: T, terms: F) -> Self
    where
        F: Fn(usize) -> Result<Option<(T, T)>, CfError> + Send + Sync + 'static,
    {
        GeneralizedCF { b0, terms: Arc::new(terms) }
    }

    pub fn from_fn<F>(b0: T, terms: F) -> Self
    where
        F: Fn(usize) -> Option<(T, T)> + Send + Sync + 'static,
    {
        Self::new(b0, move |n| Ok(terms(n)))
    }

    /// Finite fraction; `terms[0]` is `(a_1, b_1)`.
    pub fn finite(b0: T, terms: Vec<(T, T)>) -> Self {
        Self::new(b0, move |n| Ok(terms.get(n.wrapping_sub(1)).cloned()))
    }

    pub fn b0(&self) -> &T {
        &self.b0
    }

    pub fn term(&self, n: usize) -> Result<Option<(T, T)>, CfError> {
        if n == 0 {
            return Ok(None);
        }
        (self.terms)(n)
    }

    pub fn term_fn(&self) -> TermFn<T> {
        self.terms.clone()
    }

    /// `(a_1, b_1), ..., (a_n, b_n)`; shorter if the fraction ends.
    pub fn prefix(&self, n: usize) -> Result<Vec<(T, T)>, CfError> {
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            match self.term(k)? {
                Some(t) => out.push(t),
                None => break,
            }
        }
        Ok(out)
    }
}

impl GeneralizedCF<Rational> {
    /// `[a_0; a_1, ...]` as `a_0 + 1/(a_1 + 1/(...))`.
    pub fn from_regular(cf: &RegularCF) -> Result<Self, CfError> {
        let b0 = Rational::from_integer(cf.head()?);
        let cf = cf.clone();
        Ok(Self::new(b0, move |n| {
            Ok(cf.quotient(n)?.map(|q| (Rational::from_integer(1.into()), Rational::from_integer(q))))
        }))
    }
}

impl<T: Scalar> fmt::Debug for GeneralizedCF<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralizedCF({}; ", self.b0)?;
        match self.prefix(4) {
            Ok(p) => {
                for (a, b) in p {
                    write!(f, "({a}, {b}), ")?;
                }
                f.write_str("...)")
            }
            Err(e) => write!(f, "<{e}>)"),
        }
    }
}

/// `(A_k, B_k)` for `k = 0..=n` by `A_k = b_k A_{k-1} + a_k A_{k-2}`.
pub fn approximants<T: Scalar>(gcf: &GeneralizedCF<T>, n: usize) -> Result<Vec<(T, T)>, CfError> {
    let terms = gcf.prefix(n)?;
    if terms.len() < n {
        return Err(CfError::Exhausted { requested: n, available: terms.len() });
    }
    let mut out = Vec::with_capacity(n + 1);
    let (mut a0, mut b0) = (T::one(), T::zero());
    let (mut a1, mut b1) = (gcf.b0().clone(), T::one());
    out.push((a1.clone(), b1.clone()));
    for (a, b) in terms {
        let a2 = b.try_mul(&a1)?.try_add(&a.try_mul(&a0)?)?;
        let b2 = b.try_mul(&b1)?.try_add(&a.try_mul(&b0)?)?;
        a0 = std::mem::replace(&mut a1, a2);
        b0 = std::mem::replace(&mut b1, b2);
        out.push((a1.clone(), b1.clone()));
    }
    Ok(out)
}

/// Exact `n`-th approximant `A_n / B_n`.
pub fn eval_gcf<T: Scalar>(gcf: &GeneralizedCF<T>, n: usize) -> Result<T, CfError> {
    let (a, b) = approximants(gcf, n)?.pop().expect("at least the zeroth approximant");
    if b.is_zero() {
        return Err(CfError::ZeroDenominator { index: n });
    }
    Ok(a.try_div(&b)?)
}

/// Similarity transform `a_n -> c_n c_{n-1} a_n`, `b_n -> c_n b_n` with
/// `c_0 = 1`; every approximant is unchanged.
pub fn equivalence_transform<T, F>(gcf: &GeneralizedCF<T>, scales: F) -> GeneralizedCF<T>
where
    T: Scalar,
    F: Fn(usize) -> T + Send + Sync + 'static,
{
    let inner = gcf.clone();
    GeneralizedCF::new(gcf.b0().clone(), move |n| {
        let Some((a, b)) = inner.term(n)? else {
            return Ok(None);
        };
        let c = scales(n);
        if c.is_zero() {
            return Err(CfError::ZeroScale(n));
        }
        let c_prev = if n == 1 { T::one() } else { scales(n - 1) };
        if c_prev.is_zero() {
            return Err(CfError::ZeroScale(n - 1));
        }
        Ok(Some((c.try_mul(&c_prev)?.try_mul(&a)?, c.try_mul(&b)?)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn ones() -> GeneralizedCF<Rational> {
        GeneralizedCF::from_fn(rat(0, 1), |_| Some((rat(1, 1), rat(1, 1))))
    }

    #[test]
    fn hand_recurrences() {
        assert_eq!(eval_gcf(&ones(), 4).unwrap(), rat(3, 5));
        let lambert = GeneralizedCF::finite(
            rat(0, 1),
            vec![(rat(1, 1), rat(1, 1)), (rat(1, 1), rat(3, 1)), (rat(1, 1), rat(5, 1))],
        );
        assert_eq!(eval_gcf(&lambert, 3).unwrap(), rat(16, 21));
        assert_eq!(eval_gcf(&ones(), 0).unwrap(), rat(0, 1));
    }

    #[test]
    fn zero_denominator_reported_with_index() {
        let g = GeneralizedCF::finite(rat(1, 1), vec![(rat(1, 1), rat(0, 1))]);
        assert_eq!(eval_gcf(&g, 1), Err(CfError::ZeroDenominator { index: 1 }));
    }

    #[test]
    fn similarity_keeps_every_approximant() {
        let g = GeneralizedCF::from_fn(rat(1, 2), |n| Some((rat(n as i64, 3), rat(2 * n as i64 + 1, 5))));
        let h = equivalence_transform(&g, |n| rat(n as i64 + 2, 7));
        for k in 0..12 {
            assert_eq!(eval_gcf(&g, k).unwrap(), eval_gcf(&h, k).unwrap());
        }
        let zero = equivalence_transform(&g, |n| rat((n != 3) as i64, 1));
        assert_eq!(eval_gcf(&zero, 5), Err(CfError::ZeroScale(3)));
    }
}
