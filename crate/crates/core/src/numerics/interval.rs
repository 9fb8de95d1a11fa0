use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Dyadic, NumericsError, Rational, Rounding};

/// Closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation computes the exact rational result from the endpoints and
/// then rounds outward to `prec` significant bits, so the true value is never
/// lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalReal {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl IntervalReal {
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::from_bounds(r, r, prec)
    }

    /// Outward-rounded enclosure of `[lo, hi]`; the bounds may come in either order.
    pub fn from_bounds(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        IntervalReal {
            lo: Dyadic::round_rational(lo, prec, Rounding::Down),
            hi: Dyadic::round_rational(hi, prec, Rounding::Up),
            prec,
        }
    }

    pub fn from_dyadics(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        IntervalReal { lo, hi, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_dyadics(Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo_rational(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi_rational(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn width(&self) -> Rational {
        self.hi_rational() - self.lo_rational()
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo_rational() + self.hi_rational()) / Rational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo_rational() <= r && r <= &self.hi_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != num_bigint::Sign::Plus && self.hi.sign() != num_bigint::Sign::Minus
    }

    /// True when the whole interval is `> 0`.
    pub fn is_positive(&self) -> bool {
        self.lo.sign() == num_bigint::Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.hi.sign() == num_bigint::Sign::Minus
    }

    /// `width < 10^-digits`.
    pub fn narrower_than_digits(&self, digits: u32) -> bool {
        self.width() * Rational::from_integer(BigInt::from(10).pow(digits)) < Rational::one()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_bounds(&self.lo_rational(), &self.hi_rational(), prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        Self::from_bounds(
            &(self.lo_rational() + other.lo_rational()),
            &(self.hi_rational() + other.hi_rational()),
            prec,
        )
    }

    pub fn neg(&self) -> Self {
        IntervalReal { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let (a, b) = (self.lo_rational(), self.hi_rational());
        let (c, d) = (other.lo_rational(), other.hi_rational());
        let products = [&a * &c, &a * &d, &b * &c, &b * &d];
        let lo = products.iter().min().unwrap();
        let hi = products.iter().max().unwrap();
        Self::from_bounds(lo, hi, prec)
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        if self.contains_zero() {
            return Err(NumericsError::DivisorContainsZero(self.lo.to_string(), self.hi.to_string()));
        }
        let lo = self.lo_rational();
        let hi = self.hi_rational();
        Ok(Self::from_bounds(&hi.recip(), &lo.recip(), self.prec))
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumericsError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self::from_bounds(&(self.lo_rational() + r), &(self.hi_rational() + r), self.prec)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self::from_bounds(&(self.lo_rational() * r), &(self.hi_rational() * r), self.prec)
    }

    /// `[lo - radius, hi + radius]`.
    pub fn widen(&self, radius: &Rational) -> Self {
        let r = radius.abs();
        Self::from_bounds(&(self.lo_rational() - &r), &(self.hi_rational() + &r), self.prec)
    }

    pub fn abs_upper(&self) -> Rational {
        self.lo_rational().abs().max(self.hi_rational().abs())
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        if !self.overlaps(other) {
            return None;
        }
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        Some(IntervalReal { lo, hi, prec: self.prec.max(other.prec) })
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = self.lo.clone().min(other.lo.clone());
        let hi = self.hi.clone().max(other.hi.clone());
        IntervalReal { lo, hi, prec: self.prec.max(other.prec) }
    }

    /// Lower endpoint rounded down to `frac` decimal places.
    pub fn lo_decimal(&self, frac: usize) -> String {
        decimal_string(&self.lo_rational(), frac, Rounding::Down)
    }

    /// Upper endpoint rounded up to `frac` decimal places.
    pub fn hi_decimal(&self, frac: usize) -> String {
        decimal_string(&self.hi_rational(), frac, Rounding::Up)
    }
}

impl fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(20), self.hi_decimal(20))
    }
}

/// Fixed-point decimal rendering of `r` with `frac` places, rounded in the
/// given direction.
pub(crate) fn decimal_string(r: &Rational, frac: usize, dir: Rounding) -> String {
    let scale = BigInt::from(10).pow(frac as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let n = match dir {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
    };
    let neg = n.is_negative();
    let (int_part, frac_part) = n.abs().div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if frac > 0 {
        s.push('.');
        let digits = frac_part.to_string();
        s.push_str(&"0".repeat(frac - digits.len()));
        s.push_str(&digits);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn arithmetic_encloses_exact_results() {
        let a = IntervalReal::from_rational(&rat(1, 3), 64);
        let b = IntervalReal::from_rational(&rat(2, 7), 64);
        assert!(a.add(&b).contains(&rat(13, 21)));
        assert!(a.sub(&b).contains(&rat(1, 21)));
        assert!(a.mul(&b).contains(&rat(2, 21)));
        assert!(a.div(&b).unwrap().contains(&rat(7, 6)));
        assert!(a.sub(&a).contains_zero());
        assert!(a.sub(&a).recip().is_err());
    }

    #[test]
    fn decimal_rendering_is_directed() {
        let x = IntervalReal::from_rational(&rat(2, 3), 80);
        assert_eq!(x.lo_decimal(5), "0.66666");
        assert_eq!(x.hi_decimal(5), "0.66667");
        assert_eq!(decimal_string(&rat(-1, 8), 2, Rounding::Down), "-0.13");
        assert_eq!(decimal_string(&rat(-1, 8), 2, Rounding::Up), "-0.12");
        assert_eq!(decimal_string(&rat(-1, 1000), 2, Rounding::Up), "0.00");
    }

    #[test]
    fn intersect_and_hull() {
        let a = IntervalReal::from_bounds(&rat(0, 1), &rat(2, 1), 32);
        let b = IntervalReal::from_bounds(&rat(1, 1), &rat(3, 1), 32);
        let c = IntervalReal::from_bounds(&rat(5, 1), &rat(6, 1), 32);
        assert_eq!(a.intersect(&b).unwrap().width(), rat(1, 1));
        assert!(a.intersect(&c).is_none());
        assert_eq!(a.hull(&c).width(), rat(6, 1));
    }
}
