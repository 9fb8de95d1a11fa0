use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CfError;
use crate::numerics::{digits_to_bits, IntervalReal, Rational, GUARD_DIGITS};

/// Index-addressed quotient stream; index 0 is the head `a_0`.
///
/// `Ok(None)` marks the end of a finite expansion and must be returned for
/// every later index as well.
pub trait QuotientSource: Send + Sync {
    fn quotient(&self, index: usize) -> Result<Option<BigInt>, CfError>;
}

struct VecSource(Vec<BigInt>);

impl QuotientSource for VecSource {
    fn quotient(&self, index: usize) -> Result<Option<BigInt>, CfError> {
        Ok(self.0.get(index).cloned())
    }
}

struct FnSource<F>(F);

impl<F> QuotientSource for FnSource<F>
where
    F: Fn(usize) -> Option<BigInt> + Send + Sync,
{
    fn quotient(&self, index: usize) -> Result<Option<BigInt>, CfError> {
        Ok((self.0)(index))
    }
}

struct HeadShift {
    inner: RegularCF,
    shift: BigInt,
}

impl QuotientSource for HeadShift {
    fn quotient(&self, index: usize) -> Result<Option<BigInt>, CfError> {
        let q = self.inner.quotient(index)?;
        Ok(if index == 0 { q.map(|h| h + &self.shift) } else { q })
    }
}

/// A (possibly infinite, possibly signed) simple continued fraction
/// `[a_0; a_1, a_2, ...]` generated on demand.
#[derive(Clone)]
pub struct RegularCF {
    source: Arc<dyn QuotientSource>,
}

impl RegularCF {
    /// Finite expansion, head first.
    pub fn from_quotients(quotients: Vec<BigInt>) -> Self {
        Self::from_source(Arc::new(VecSource(quotients)))
    }

    pub fn from_i64s(quotients: &[i64]) -> Self {
        Self::from_quotients(quotients.iter().map(|&q| BigInt::from(q)).collect())
    }

    /// Stream given by a stateless function of the index (head at 0).
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(usize) -> Option<BigInt> + Send + Sync + 'static,
    {
        Self::from_source(Arc::new(FnSource(f)))
    }

    pub fn from_source(source: Arc<dyn QuotientSource>) -> Self {
        RegularCF { source }
    }

    pub fn quotient(&self, index: usize) -> Result<Option<BigInt>, CfError> {
        self.source.quotient(index)
    }

    pub fn head(&self) -> Result<BigInt, CfError> {
        self.quotient(0)?.ok_or(CfError::Exhausted { requested: 0, available: 0 })
    }

    /// Head plus up to `n` further quotients (fewer if the expansion ends).
    pub fn prefix(&self, n: usize) -> Result<Vec<BigInt>, CfError> {
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            match self.quotient(i)? {
                Some(q) => out.push(q),
                None => break,
            }
        }
        Ok(out)
    }

    /// Head plus exactly `n` quotients, or an error if the expansion is shorter.
    pub fn take(&self, n: usize) -> Result<Vec<BigInt>, CfError> {
        let p = self.prefix(n)?;
        if p.len() < n + 1 {
            return Err(CfError::Exhausted { requested: n, available: p.len().saturating_sub(1) });
        }
        Ok(p)
    }

    /// Same tail, head increased by `shift`.
    pub fn shift_head(&self, shift: BigInt) -> Self {
        Self::from_source(Arc::new(HeadShift { inner: self.clone(), shift }))
    }
}

impl fmt::Debug for RegularCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prefix(8) {
            Ok(p) => {
                let more = matches!(self.quotient(9), Ok(Some(_)));
                write!(f, "RegularCF({}{})", super::format_cf_literal(&p, false), if more { "~" } else { "" })
            }
            Err(e) => write!(f, "RegularCF(<{e}>)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }
}

/// `P_0/Q_0, ..., P_n/Q_n` by the three-term recurrence.
pub fn convergents(cf: &RegularCF, n: usize) -> Result<Vec<Convergent>, CfError> {
    let quotients = cf.take(n)?;
    let mut out = Vec::with_capacity(n + 1);
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (quotients[0].clone(), BigInt::one());
    out.push(Convergent { p: p1.clone(), q: q1.clone() });
    for a in &quotients[1..] {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        out.push(Convergent { p: p1.clone(), q: q1.clone() });
    }
    Ok(out)
}

/// Exact value of a finite, possibly signed expansion.
///
/// Zeros and negatives are evaluated projectively by the forward recurrence,
/// so `[a, 0, b] = [a + b]` holds; only a vanishing final denominator is an
/// error.
pub fn eval_finite(quotients: &[BigInt]) -> Result<Rational, CfError> {
    let Some((head, tail)) = quotients.split_first() else {
        return Err(CfError::Exhausted { requested: 0, available: 0 });
    };
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (head.clone(), BigInt::one());
    for a in tail {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    if q1.is_zero() {
        return Err(CfError::Undefined);
    }
    Ok(Rational::new(p1, q1))
}

#[derive(Debug, Clone)]
pub struct CertifiedValue {
    pub enclosure: IntervalReal,
    /// Quotients after the head that were consumed.
    pub terms_used: usize,
    /// Set when the expansion terminated.
    pub exact: Option<Rational>,
}

/// Enclosure of a canonical expansion between two consecutive convergents.
pub fn certified_value(cf: &RegularCF, digits: u32) -> Result<IntervalReal, CfError> {
    Ok(certified_value_budget(cf, digits, usize::MAX)?.enclosure)
}

/// As [`certified_value`], failing with [`CfError::Budget`] when more than
/// `max_terms` quotients would be needed.
pub fn certified_value_budget(cf: &RegularCF, digits: u32, max_terms: usize) -> Result<CertifiedValue, CfError> {
    let prec = digits_to_bits(digits + GUARD_DIGITS);
    let target = BigInt::from(10).pow(digits);
    let head = cf.head()?;
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (head, BigInt::one());
    let mut k = 0usize;
    loop {
        let next = cf.quotient(k + 1)?;
        let Some(a) = next else {
            let v = Rational::new(p1, q1);
            let prec = prec + v.abs().ceil().to_integer().bits() as u32;
            return Ok(CertifiedValue {
                enclosure: IntervalReal::from_rational(&v, prec),
                terms_used: k,
                exact: Some(v),
            });
        };
        if !a.is_positive() {
            return Err(CfError::NonCanonical { index: k + 1, value: a });
        }
        if k == max_terms {
            return Err(CfError::Budget { digits, terms: max_terms });
        }
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        k += 1;
        // consecutive convergents differ by 1/(q0 q1)
        if &q0 * &q1 > target {
            let lo = Rational::new(p0.clone(), q0.clone());
            let hi = Rational::new(p1.clone(), q1.clone());
            let prec = prec + lo.abs().ceil().to_integer().bits() as u32;
            let iv = IntervalReal::from_bounds(&lo, &hi, prec);
            if iv.narrower_than_digits(digits) {
                return Ok(CertifiedValue { enclosure: iv, terms_used: k, exact: None });
            }
        }
    }
}
