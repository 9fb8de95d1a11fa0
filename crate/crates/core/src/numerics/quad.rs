use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{square_free_decompose, IntervalReal, NumericsError, Rational, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
}

/// `x + y*sqrt(D)` with rational coordinates and square-free `D >= 1`.
///
/// An element with `y = 0` is rational and combines with any field.
#[derive(Debug, Clone)]
pub struct QuadElem {
    x: Rational,
    y: Rational,
    radicand: BigInt,
}

impl QuadElem {
    /// Builds `x + y*sqrt(d)`, pulling square factors of `d` into `y`.
    pub fn new(x: Rational, y: Rational, d: BigInt) -> Result<Self, NumericsError> {
        match d.sign() {
            Sign::Minus => Err(NumericsError::NegativeRadicand(d.to_string())),
            Sign::NoSign => Ok(Self::from_rational(x)),
            Sign::Plus => {
                let (s, r) = square_free_decompose(d.magnitude());
                let y = y * Rational::from_integer(BigInt::from(s));
                let r = BigInt::from(r);
                if r.is_one() {
                    Ok(Self::from_rational(x + y))
                } else {
                    Ok(QuadElem { x, y, radicand: r })
                }
            }
        }
    }

    pub fn from_rational(x: Rational) -> Self {
        QuadElem { x, y: Rational::zero(), radicand: BigInt::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(r)` for `r >= 0`, rational when `r` is a rational square.
    pub fn sqrt_of(r: &Rational) -> Result<Self, NumericsError> {
        if r.is_negative() {
            return Err(NumericsError::NegativeRadicand(r.to_string()));
        }
        let den = r.denom().clone();
        let coeff = Rational::new(BigInt::one(), den.clone());
        Self::new(Rational::zero(), coeff, r.numer() * den)
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.x)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem { x: self.x.clone(), y: -&self.y, radicand: self.radicand.clone() }
    }

    /// `x^2 - D*y^2`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - Rational::from_integer(self.radicand.clone()) * &self.y * &self.y
    }

    pub fn neg(&self) -> Self {
        QuadElem { x: -&self.x, y: -&self.y, radicand: self.radicand.clone() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.with(&self.x * r, &self.y * r, self.radicand.clone())
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        self.with(&self.x + r, self.y.clone(), self.radicand.clone())
    }

    fn with(&self, x: Rational, y: Rational, radicand: BigInt) -> Self {
        QuadElem { x, y, radicand }
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt, NumericsError> {
        if other.y.is_zero() {
            Ok(self.radicand.clone())
        } else if self.y.is_zero() || self.radicand == other.radicand {
            Ok(other.radicand.clone())
        } else {
            Err(NumericsError::RadicandMismatch(self.radicand.clone(), other.radicand.clone()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        Ok(self.with(&self.x + &other.x, &self.y + &other.y, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NumericsError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        let x = &self.x * &other.x + &self.y * &other.y * dr;
        let y = &self.x * &other.y + &self.y * &other.x;
        Ok(self.with(x, y, d))
    }

    /// Division through the conjugate over the rational norm.
    pub fn checked_div(&self, other: &Self) -> Result<Self, NumericsError> {
        self.common_radicand(other)?;
        let n = other.norm();
        if n.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(self.checked_mul(&other.conj())?.scale(&n.recip()))
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        Self::from_rational(Rational::one()).checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Result<Self, NumericsError> {
        let mut acc = Self::from_rational(Rational::one());
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Exact sign of the real number `x + y*sqrt(D)`.
    pub fn signum(&self) -> Ordering {
        let sx = self.x.cmp(&Rational::zero());
        let sy = self.y.cmp(&Rational::zero());
        if sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        let x2 = &self.x * &self.x;
        let y2d = &self.y * &self.y * Rational::from_integer(self.radicand.clone());
        if x2 > y2d {
            sx
        } else {
            sy
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Enclosure with absolute error around `2^-bits`.
    pub fn interval_bits(&self, bits: u32) -> IntervalReal {
        let mag = self.x.abs().ceil().to_integer().bits() as u32
            + self.y.abs().ceil().to_integer().bits() as u32
            + self.radicand.bits() as u32;
        let prec = bits + mag + 8;
        if self.y.is_zero() {
            return IntervalReal::from_rational(&self.x, prec);
        }
        let k = bits as u64 + self.y.abs().ceil().to_integer().bits() + 4;
        let s = (&self.radicand << (2 * k) as usize).sqrt();
        let scale = Rational::from_integer(BigInt::one() << k as usize);
        let lo_root = Rational::from_integer(s.clone()) / &scale;
        let hi_root = Rational::from_integer(s + 1) / &scale;
        let a = &self.x + &self.y * lo_root;
        let b = &self.x + &self.y * hi_root;
        IntervalReal::from_bounds(&a, &b, prec)
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && (self.y.is_zero() || self.radicand == other.radicand)
    }
}

impl Eq for QuadElem {}

impl Hash for QuadElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
        if !self.y.is_zero() {
            self.radicand.hash(state);
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        if self.x.is_zero() {
            write!(f, "{}*sqrt({})", self.y, self.radicand)
        } else if self.y.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.x, -&self.y, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.x, self.y, self.radicand)
        }
    }
}

/// Field operation dispatcher; `Conj` ignores `v`.
pub fn quad_arith(op: QuadOp, u: &QuadElem, v: &QuadElem) -> Result<QuadElem, NumericsError> {
    match op {
        QuadOp::Add => u.checked_add(v),
        QuadOp::Sub => u.checked_sub(v),
        QuadOp::Mul => u.checked_mul(v),
        QuadOp::Div => u.checked_div(v),
        QuadOp::Conj => Ok(u.conj()),
    }
}

/// Enclosure of `u` narrower than `10^-digits`.
pub fn quad_to_interval(u: &QuadElem, digits: u32) -> Result<IntervalReal, NumericsError> {
    Real::from_quad(u.clone()).enclose(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn q(x: Rational, y: Rational, d: i64) -> QuadElem {
        QuadElem::new(x, y, BigInt::from(d)).unwrap()
    }

    #[test]
    fn square_factors_are_absorbed() {
        let u = q(rat(1, 1), rat(1, 1), 12);
        assert_eq!(u.radicand(), &BigInt::from(3));
        assert_eq!(u.y(), &rat(2, 1));
        let r = q(rat(1, 1), rat(1, 2), 16);
        assert_eq!(r.as_rational(), Some(&rat(3, 1)));
    }

    #[test]
    fn sqrt_of_rationals() {
        let s = QuadElem::sqrt_of(&rat(9, 4)).unwrap();
        assert_eq!(s.as_rational(), Some(&rat(3, 2)));
        let s = QuadElem::sqrt_of(&rat(1, 2)).unwrap();
        assert_eq!(s, q(rat(0, 1), rat(1, 2), 2));
        assert!(QuadElem::sqrt_of(&rat(-1, 2)).is_err());
    }

    #[test]
    fn exact_sign() {
        assert!(q(rat(-2, 1), rat(1, 1), 5).is_positive());
        assert!(!q(rat(-3, 1), rat(1, 1), 5).is_positive());
        assert_eq!(q(rat(3, 1), rat(-1, 1), 10).signum(), Ordering::Less);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = q(rat(0, 1), rat(1, 1), 2);
        let b = q(rat(0, 1), rat(1, 1), 3);
        assert!(matches!(a.checked_add(&b), Err(NumericsError::RadicandMismatch(_, _))));
        assert!(a.checked_mul(&QuadElem::from_int(4)).is_ok());
    }
}
