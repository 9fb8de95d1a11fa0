use std::fmt;

use num_traits::{One, Zero};

use super::{IntervalReal, NumericsError, QuadElem, Rational};

/// Exact field elements the continued-fraction machinery can run over.
///
/// Operations are fallible because quadratic elements from different fields
/// do not combine.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self, NumericsError>;
    fn try_sub(&self, other: &Self) -> Result<Self, NumericsError>;
    fn try_mul(&self, other: &Self) -> Result<Self, NumericsError>;
    fn try_div(&self, other: &Self) -> Result<Self, NumericsError>;
    fn neg(&self) -> Self;
    /// Enclosure with roughly `bits` bits of absolute accuracy.
    fn enclose_bits(&self, bits: u32) -> Result<IntervalReal, NumericsError>;
    /// Cheap rational upper bound on the absolute value.
    fn magnitude_upper(&self) -> Rational;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, NumericsError> {
        Ok(self + other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, NumericsError> {
        Ok(self - other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, NumericsError> {
        Ok(self * other)
    }
    fn try_div(&self, other: &Self) -> Result<Self, NumericsError> {
        if Zero::is_zero(other) {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(self / other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn enclose_bits(&self, bits: u32) -> Result<IntervalReal, NumericsError> {
        Ok(IntervalReal::from_rational(self, bits))
    }
    fn magnitude_upper(&self) -> Rational {
        num_traits::Signed::abs(self)
    }
}

impl Scalar for QuadElem {
    fn zero() -> Self {
        QuadElem::from_rational(Zero::zero())
    }
    fn one() -> Self {
        QuadElem::from_rational(One::one())
    }
    fn from_rational(r: Rational) -> Self {
        QuadElem::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        QuadElem::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, NumericsError> {
        self.checked_add(other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, NumericsError> {
        self.checked_sub(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, NumericsError> {
        self.checked_mul(other)
    }
    fn try_div(&self, other: &Self) -> Result<Self, NumericsError> {
        self.checked_div(other)
    }
    fn neg(&self) -> Self {
        QuadElem::neg(self)
    }
    fn enclose_bits(&self, bits: u32) -> Result<IntervalReal, NumericsError> {
        Ok(self.interval_bits(bits))
    }
    fn magnitude_upper(&self) -> Rational {
        use num_traits::Signed;
        let root = Rational::from_integer(self.radicand().sqrt() + 1u32);
        self.x().abs() + self.y().abs() * root
    }
}
