use num_traits::{One, Signed, Zero};

use crate::numerics::{IntervalReal, NumericsError, QuadElem, Rational, Real};

use super::series::sum_series;
use super::SurdArg;

/// `scale * (z/2) * S_1 / S_0` with
/// `S_1 = sum t^k / ((nu)_{k+1} k!)`, `S_0 = sum t^k / ((nu)_k k!)`, `t = z^2/4`.
///
/// This is `scale * I_nu(z) / I_{nu-1}(z)` written without Gamma functions.
#[derive(Debug, Clone)]
pub struct BesselRatioParams {
    pub nu: Rational,
    pub z: SurdArg,
    pub scale: QuadElem,
}

impl BesselRatioParams {
    pub fn new(nu: Rational, z: SurdArg) -> Self {
        BesselRatioParams { nu, z, scale: QuadElem::from_rational(Rational::one()) }
    }

    pub fn with_scale(mut self, scale: QuadElem) -> Self {
        self.scale = scale;
        self
    }
}

/// `sum_k t^k / ((nu)_{k+offset} k!)` with its tail bound.
fn pochhammer_series(nu: &Rational, offset: usize, t: &Rational, bits: u32) -> Result<IntervalReal, NumericsError> {
    let mut first = Rational::one();
    for j in 0..offset {
        let f = nu + Rational::from_integer(j.into());
        if f.is_zero() {
            return Err(NumericsError::PochhammerZero(j));
        }
        first /= f;
    }
    let next = |k: usize, prev: &Rational| -> Result<Rational, NumericsError> {
        // t_k / t_{k-1} = t / ((nu + k - 1 + offset) k)
        let f = nu + Rational::from_integer((k - 1 + offset).into());
        if f.is_zero() {
            return Err(NumericsError::PochhammerZero(k - 1 + offset));
        }
        Ok(prev * t / (f * Rational::from_integer(k.into())))
    };
    let tabs = t.abs();
    let ratio = |n: usize| -> Option<Rational> {
        let f = nu + Rational::from_integer((n + offset).into());
        if !f.is_positive() {
            return None;
        }
        Some(&tabs / (f * Rational::from_integer((n + 1).into())))
    };
    sum_series(first, next, ratio, bits)?.enclose(bits)
}

pub fn bessel_type_real(p: &BesselRatioParams) -> Result<Real, NumericsError> {
    let t = p.z.square() / Rational::from_integer(4.into());
    for j in 0..2 {
        if (&p.nu + Rational::from_integer(j.into())).is_zero() {
            return Err(NumericsError::PochhammerZero(j));
        }
    }
    let half_z = p.z.to_quad().scale(&Rational::new(1.into(), 2.into()));
    let pre = match p.scale.checked_mul(&half_z) {
        Ok(u) => Real::from_quad(u),
        Err(_) => Real::from_quad(p.scale.clone()).mul(&Real::from_quad(half_z)),
    };
    let (nu1, t1) = (p.nu.clone(), t.clone());
    let s1 = Real::from_fn(move |bits| pochhammer_series(&nu1, 1, &t1, bits));
    let nu0 = p.nu.clone();
    let s0 = Real::from_fn(move |bits| pochhammer_series(&nu0, 0, &t, bits));
    Ok(pre.mul(&s1.div(&s0)?))
}

pub fn bessel_type_ratio(p: &BesselRatioParams, digits: u32) -> Result<IntervalReal, NumericsError> {
    bessel_type_real(p)?.enclose(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{certified_value, RegularCF};
    use crate::numerics::rat;
    use num_bigint::BigInt;

    fn lehmer(a: i64, b: i64) -> BesselRatioParams {
        BesselRatioParams::new(rat(a, b), SurdArg::rational(rat(2, b)))
    }

    #[test]
    fn lehmer_one_one() {
        // [0; 1, 2, 3, 4, ...]
        let v = bessel_type_ratio(&lehmer(1, 1), 30).unwrap();
        let cf = RegularCF::from_fn(|n| Some(BigInt::from(n)));
        let w = certified_value(&cf, 30).unwrap();
        assert!(v.overlaps(&w));
    }

    #[test]
    fn lehmer_two_four() {
        // [0; 2, 6, 10, ...] = (e - 1)/(e + 1)
        let v = bessel_type_ratio(&lehmer(2, 4), 30).unwrap();
        let cf = RegularCF::from_fn(|n| Some(if n == 0 { BigInt::zero() } else { BigInt::from(4 * n - 2) }));
        let w = certified_value(&cf, 30).unwrap();
        assert!(v.overlaps(&w));
    }

    #[test]
    fn pochhammer_zero_reported() {
        let p = BesselRatioParams::new(rat(-1, 1), SurdArg::rational(rat(1, 1)));
        assert!(matches!(bessel_type_real(&p), Err(NumericsError::PochhammerZero(1))));
    }
}
