use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// `mantissa * 2^exponent`, normalized so the mantissa is odd (or zero with
/// exponent zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Dyadic { mantissa: mantissa >> tz, exponent: exponent + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_rational(&self) -> Rational {
        let one = BigInt::from(1);
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            Rational::new(self.mantissa.clone(), one << (-self.exponent) as usize)
        }
    }

    /// Rounds `r` to a dyadic with about `bits` significant bits, in the given
    /// direction. Exact when `r` already fits.
    pub fn round_rational(r: &Rational, bits: u32, dir: Rounding) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let num = r.numer();
        let den = r.denom();
        let k = bits as i64 + 1 - (num.bits() as i64 - den.bits() as i64);
        let (n2, d2) = if k >= 0 { (num << k as usize, den.clone()) } else { (num.clone(), den << (-k) as usize) };
        let (q, rem) = n2.div_mod_floor(&d2);
        let m = match dir {
            Rounding::Down => q,
            Rounding::Up if rem.is_zero() => q,
            Rounding::Up => q + 1,
        };
        Self::new(m, -k)
    }

    pub fn neg(&self) -> Self {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn sign(&self) -> Sign {
        self.mantissa.sign()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Debug dump as `±m*2^e`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mantissa.is_negative() { '-' } else { '+' };
        write!(f, "{}{}*2^{}", sign, self.mantissa.abs(), self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn rounding_brackets_value() {
        let third = rat(1, 3);
        let lo = Dyadic::round_rational(&third, 20, Rounding::Down);
        let hi = Dyadic::round_rational(&third, 20, Rounding::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.to_rational() - lo.to_rational() < rat(1, 1 << 20));
    }

    #[test]
    fn exact_values_survive() {
        let v = rat(-3, 8);
        let d = Dyadic::round_rational(&v, 4, Rounding::Up);
        assert_eq!(d.to_rational(), v);
        assert_eq!(d.to_string(), "-3*2^-3");
        assert_eq!(Dyadic::from_integer(BigInt::from(12)).to_string(), "+3*2^2");
    }

    #[test]
    fn ordering_across_exponents() {
        let a = Dyadic::new(BigInt::from(3), -1);
        let b = Dyadic::new(BigInt::from(1), 1);
        assert!(a < b);
        assert!(a.neg() > b.neg());
    }
}
