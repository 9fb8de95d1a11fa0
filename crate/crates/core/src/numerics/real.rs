use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::{IntervalReal, NumericsError, QuadElem, Rational};

/// Guard digits added on top of the requested precision.
pub const GUARD_DIGITS: u32 = 10;
/// Number of precision doublings before giving up.
pub const MAX_ESCALATIONS: u32 = 16;

type Producer = Arc<dyn Fn(u32) -> Result<IntervalReal, NumericsError> + Send + Sync>;

/// A real number known either exactly or through a producer that can be
/// re-run at any working precision (measured in bits of absolute accuracy).
#[derive(Clone)]
pub enum Real {
    Exact(Rational),
    Lazy(Producer),
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 2
}

fn magnitude_bits(r: &Rational) -> u32 {
    r.abs().ceil().to_integer().bits() as u32
}

impl Real {
    pub fn exact(r: Rational) -> Self {
        Real::Exact(r)
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(u32) -> Result<IntervalReal, NumericsError> + Send + Sync + 'static,
    {
        Real::Lazy(Arc::new(f))
    }

    pub fn from_quad(u: QuadElem) -> Self {
        match u.as_rational() {
            Some(r) => Real::Exact(r.clone()),
            None => Real::from_fn(move |bits| Ok(u.interval_bits(bits))),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Lazy(_) => None,
        }
    }

    /// One evaluation at a fixed working precision.
    pub fn at_bits(&self, bits: u32) -> Result<IntervalReal, NumericsError> {
        match self {
            Real::Exact(r) => Ok(IntervalReal::from_rational(r, bits + magnitude_bits(r) + 4)),
            Real::Lazy(f) => f(bits),
        }
    }

    /// Enclosure narrower than `10^-digits`.
    ///
    /// Starts at `digits + GUARD_DIGITS` and doubles the working precision on
    /// failure, at most `MAX_ESCALATIONS` times. A divisor straddling zero is
    /// treated as a precision failure.
    pub fn enclose(&self, digits: u32) -> Result<IntervalReal, NumericsError> {
        let mut bits = digits_to_bits(digits + GUARD_DIGITS);
        let mut last_err = None;
        for _ in 0..=MAX_ESCALATIONS {
            match self.at_bits(bits) {
                Ok(iv) if iv.narrower_than_digits(digits) => return Ok(iv),
                Ok(_) => {}
                Err(e @ NumericsError::DivisorContainsZero(..)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
            bits *= 2;
        }
        Err(last_err.unwrap_or(NumericsError::EscalationCap { digits, escalations: MAX_ESCALATIONS }))
    }

    fn lazy2<F>(&self, other: &Real, extra: u32, f: F) -> Real
    where
        F: Fn(IntervalReal, IntervalReal) -> Result<IntervalReal, NumericsError> + Send + Sync + 'static,
    {
        let (a, b) = (self.clone(), other.clone());
        Real::from_fn(move |bits| f(a.at_bits(bits + extra)?, b.at_bits(bits + extra)?))
    }

    pub fn add(&self, other: &Real) -> Real {
        if let (Real::Exact(a), Real::Exact(b)) = (self, other) {
            return Real::Exact(a + b);
        }
        self.lazy2(other, 2, |x, y| Ok(x.add(&y)))
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Lazy(_) => {
                let a = self.clone();
                Real::from_fn(move |bits| Ok(a.at_bits(bits)?.neg()))
            }
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        if let (Real::Exact(a), Real::Exact(b)) = (self, other) {
            return Real::Exact(a * b);
        }
        self.lazy2(other, 8, |x, y| Ok(x.mul(&y)))
    }

    pub fn div(&self, other: &Real) -> Result<Real, NumericsError> {
        if let (Real::Exact(a), Real::Exact(b)) = (self, other) {
            if num_traits::Zero::is_zero(b) {
                return Err(NumericsError::DivisionByZero);
            }
            return Ok(Real::Exact(a / b));
        }
        Ok(self.lazy2(other, 8, |x, y| x.div(&y)))
    }

    pub fn recip(&self) -> Result<Real, NumericsError> {
        Real::Exact(num_traits::One::one()).div(self)
    }

    pub fn add_rational(&self, r: &Rational) -> Real {
        self.add(&Real::Exact(r.clone()))
    }

    pub fn mul_rational(&self, r: &Rational) -> Real {
        self.mul(&Real::Exact(r.clone()))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => write!(f, "Real::Exact({r})"),
            Real::Lazy(_) => f.write_str("Real::Lazy(..)"),
        }
    }
}

/// Re-runs the producer of `v` until the enclosure is narrower than
/// `10^-digits`, intersecting with `current` so refinement never widens.
pub fn interval_refine(v: &Real, current: &IntervalReal, digits: u32) -> Result<IntervalReal, NumericsError> {
    let fresh = v.enclose(digits)?;
    current
        .intersect(&fresh)
        .ok_or_else(|| NumericsError::Domain(format!("refined enclosure {fresh} is disjoint from {current}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use num_bigint::BigInt;

    #[test]
    fn exact_rational_encloses_tightly() {
        let r = Real::exact(rat(6, 13));
        let iv = r.enclose(50).unwrap();
        assert!(iv.contains(&rat(6, 13)));
        assert!(iv.narrower_than_digits(50));
    }

    #[test]
    fn refinement_is_contractive() {
        let u = QuadElem::new(rat(0, 1), rat(1, 1), BigInt::from(2)).unwrap();
        let r = Real::from_quad(u);
        let coarse = r.enclose(5).unwrap();
        let fine = interval_refine(&r, &coarse, 30).unwrap();
        assert!(fine.narrower_than_digits(30));
        assert!(coarse.lo() <= fine.lo() && fine.hi() <= coarse.hi());
    }

    #[test]
    fn division_by_straddling_zero_escalates_then_fails() {
        let zero_ish = Real::from_fn(|bits| {
            let eps = Rational::new(BigInt::from(1), BigInt::from(1) << bits as usize);
            Ok(IntervalReal::from_bounds(&-eps.clone(), &eps, bits))
        });
        let q = Real::exact(rat(1, 1)).div(&zero_ish).unwrap();
        assert!(matches!(q.enclose(3), Err(NumericsError::DivisorContainsZero(..))));
    }
}
