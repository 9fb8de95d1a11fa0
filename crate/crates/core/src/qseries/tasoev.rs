use num_traits::{One, Signed, Zero};

use crate::cf::{CfError, GeneralizedCF};
use crate::numerics::{IntervalReal, NumericsError, QuadElem, Rational, Real};

use super::series::{sum_series, Summed};

/// `(z; q)_n = (1 - z)(1 - zq)...(1 - zq^{n-1})`.
pub fn q_pochhammer<T: crate::numerics::Scalar>(z: &T, q: &Rational, n: usize) -> T {
    let mut acc = T::one();
    let mut zq = z.clone();
    let qs = T::from_rational(q.clone());
    for _ in 0..n {
        let factor = T::one().try_sub(&zq).expect("rational scaling stays in the field");
        acc = acc.try_mul(&factor).expect("rational scaling stays in the field");
        zq = zq.try_mul(&qs).expect("rational scaling stays in the field");
    }
    acc
}

/// Exponent law of the power of `q` attached to the n-th term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftLaw {
    /// `n(n+1)/2`
    Triangular,
    /// `n(n+3)/2`
    Shifted,
}

impl ShiftLaw {
    fn step(self, n: usize) -> usize {
        match self {
            ShiftLaw::Triangular => n,
            ShiftLaw::Shifted => n + 1,
        }
    }
}

/// Parameters of `sum_{n>=0} prod_{k<n}(beta + beta_shift q^k) q^{law(n)} / ((q;q)_n (gamma;q)_n)`.
///
/// With `beta_shift = 0` this is the plain `beta^n q^{law(n)} / ((q;q)_n (gamma;q)_n)`.
#[derive(Debug, Clone)]
pub struct TasoevSumParams {
    pub beta: QuadElem,
    pub beta_shift: QuadElem,
    pub gamma: QuadElem,
    pub q: Rational,
    pub shift: ShiftLaw,
}

impl TasoevSumParams {
    pub fn new(beta: QuadElem, gamma: QuadElem, q: Rational, shift: ShiftLaw) -> Self {
        TasoevSumParams { beta, beta_shift: QuadElem::from_rational(Rational::zero()), gamma, q, shift }
    }

    fn check(&self) -> Result<(), NumericsError> {
        if self.q.abs() >= Rational::one() {
            return Err(NumericsError::Domain(format!("series needs |q| < 1, got q = {}", self.q)));
        }
        Ok(())
    }

    fn summed(&self, bits: u32) -> Result<Summed<QuadElem>, NumericsError> {
        let q = self.q.clone();
        let qabs = q.abs();
        let bound = |x: &QuadElem| x.interval_bits(64).abs_upper();
        let (beta_up, shift_up, gamma_up) = (bound(&self.beta), bound(&self.beta_shift), bound(&self.gamma));
        let law = self.shift;
        let next = |n: usize, prev: &QuadElem| -> Result<QuadElem, NumericsError> {
            let qk = num_traits::pow(q.clone(), n - 1);
            let factor = self.beta.checked_add(&self.beta_shift.scale(&qk))?;
            let qpow = num_traits::pow(q.clone(), law.step(n));
            let den_q = Rational::one() - &qk * &q;
            let den_g = self.gamma.scale(&qk).neg().add_rational(&Rational::one());
            if den_q.is_zero() || den_g.is_zero() {
                return Err(NumericsError::PochhammerZero(n));
            }
            prev.checked_mul(&factor)?.scale(&(qpow / den_q)).checked_div(&den_g)
        };
        let ratio = |n: usize| -> Option<Rational> {
            let qn = num_traits::pow(qabs.clone(), n);
            let qn1 = &qn * &qabs;
            let one = Rational::one();
            let g = &one - &gamma_up * &qn;
            let h = &one - &qn1;
            if !g.is_positive() || !h.is_positive() {
                return None;
            }
            Some((&beta_up + &shift_up * &qn) * &qn1 / (g * h))
        };
        sum_series(QuadElem::from_rational(Rational::one()), next, ratio, bits)
    }
}

/// Lazy certified value of the sum.
pub fn tasoev_real(p: &TasoevSumParams) -> Result<Real, NumericsError> {
    p.check()?;
    let p = p.clone();
    Ok(Real::from_fn(move |bits| p.summed(bits)?.enclose(bits)))
}

pub fn tasoev_sum(p: &TasoevSumParams, digits: u32) -> Result<IntervalReal, NumericsError> {
    tasoev_real(p)?.enclose(digits)
}

/// `H_1(a,b,c,d,q) = 1/1 + (c - abq)/((a+b)q + d) + ... + (c q^n - ab q^{2n+1})/((a+b) q^{n+1} + d) + ...`
pub fn h1_gcf(a: &QuadElem, b: &QuadElem, c: &QuadElem, d: &QuadElem, q: &Rational) -> GeneralizedCF<QuadElem> {
    let (a, b, c, d, q) = (a.clone(), b.clone(), c.clone(), d.clone(), q.clone());
    GeneralizedCF::new(QuadElem::from_rational(Rational::zero()), move |n| {
        if n == 0 {
            return Ok(None);
        }
        if n == 1 {
            let one = QuadElem::from_rational(Rational::one());
            return Ok(Some((one.clone(), one)));
        }
        let j = n - 2;
        let qj = num_traits::pow(q.clone(), j);
        let q2j1 = num_traits::pow(q.clone(), 2 * j + 1);
        let ab = a.checked_mul(&b).map_err(CfError::from)?;
        let num = c.scale(&qj).checked_sub(&ab.scale(&q2j1))?;
        let den = a.checked_add(&b)?.scale(&(qj * &q)).checked_add(&d)?;
        Ok(Some((num, den)))
    })
}

/// Lazy value of `1/H_1 - 1` through the ratio of two q-series.
pub fn h1_real(a: &QuadElem, b: &QuadElem, c: &QuadElem, d: &QuadElem, q: &Rational) -> Result<Real, NumericsError> {
    if d.is_zero() {
        return Err(NumericsError::Domain("H1 needs d != 0".into()));
    }
    let ab = a.checked_mul(b)?;
    let lead = c.checked_sub(&ab.scale(q))?;
    if lead.is_zero() {
        return Ok(Real::exact(Rational::zero()));
    }
    let dq = d.checked_add(&a.scale(q))?;
    if dq.is_zero() {
        return Err(NumericsError::DivisionByZero);
    }
    // the stray 1/q of the prefactor cancels against q^{(j+1)(j+2)/2} = q * q^{j(j+3)/2}
    let pre = lead.checked_div(&dq)?;
    let beta = b.checked_div(d)?;
    let beta_shift = c.checked_div(&d.checked_mul(d)?)?;
    let a_over_d = a.checked_div(d)?;
    let top = TasoevSumParams {
        beta: beta.clone(),
        beta_shift: beta_shift.clone(),
        gamma: a_over_d.scale(&(q * q)).neg(),
        q: q.clone(),
        shift: ShiftLaw::Shifted,
    };
    let bottom =
        TasoevSumParams { beta, beta_shift, gamma: a_over_d.scale(q).neg(), q: q.clone(), shift: ShiftLaw::Triangular };
    let ratio = tasoev_real(&top)?.div(&tasoev_real(&bottom)?)?;
    Ok(Real::from_quad(pre).mul(&ratio))
}

pub fn h1_ratio(
    a: &QuadElem,
    b: &QuadElem,
    c: &QuadElem,
    d: &QuadElem,
    q: &Rational,
    digits: u32,
) -> Result<IntervalReal, NumericsError> {
    h1_real(a, b, c, d, q)?.enclose(digits)
}

/// Right side of the two-parameter Tasoev identity
/// `[0; c + (dc/e) m, e + d m^2, c + (dc/e) m^3, e + d m^4, ...]`,
/// with `a, b = (e -+ sqrt(e^2 + 4e/c))/2` and `q = 1/m`.
///
/// `d` and `m` may be negative, which covers the sign-alternating variants.
pub fn tas2_closed(c: &Rational, e: &Rational, d: &Rational, m: &Rational) -> Result<Real, NumericsError> {
    if c.is_zero() || e.is_zero() || d.is_zero() || m.is_zero() {
        return Err(NumericsError::Domain("c, e, d, m must be nonzero".into()));
    }
    let disc = e * e + Rational::from_integer(4.into()) * e / c;
    let root = QuadElem::sqrt_of(&disc)?;
    let half = Rational::new(1.into(), 2.into());
    let ee = QuadElem::from_rational(e.clone());
    let a = ee.checked_sub(&root)?.scale(&half);
    let b = ee.checked_add(&root)?.scale(&half);
    let q = m.recip();
    let md_a = a.add_rational(&(m * d));
    if md_a.is_zero() {
        return Err(NumericsError::DivisionByZero);
    }
    let pre = QuadElem::from_rational(e / c).checked_div(&md_a)?;
    let beta = b.scale(&d.recip());
    let a_over_d = a.scale(&d.recip());
    let top = TasoevSumParams::new(beta.clone(), a_over_d.scale(&(&q * &q)).neg(), q.clone(), ShiftLaw::Shifted);
    let bottom = TasoevSumParams::new(beta, a_over_d.scale(&q).neg(), q, ShiftLaw::Triangular);
    let ratio = tasoev_real(&top)?.div(&tasoev_real(&bottom)?)?;
    Ok(Real::from_quad(pre).mul(&ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{certified_value, eval_gcf, RegularCF};
    use crate::numerics::rat;
    use num_bigint::BigInt;

    fn qr(n: i64, d: i64) -> QuadElem {
        QuadElem::from_rational(rat(n, d))
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(q_pochhammer(&rat(1, 2), &rat(1, 2), 2), rat(3, 8));
        assert_eq!(q_pochhammer(&rat(7, 3), &rat(1, 5), 0), rat(1, 1));
        assert_eq!(q_pochhammer(&rat(0, 1), &rat(1, 5), 9), rat(1, 1));
    }

    #[test]
    fn zero_beta_sums_to_one() {
        let p = TasoevSumParams::new(qr(0, 1), qr(1, 3), rat(1, 2), ShiftLaw::Shifted);
        let s = tasoev_sum(&p, 30).unwrap();
        assert!(s.contains(&rat(1, 1)));
        assert!(s.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn matches_exact_partial_sum() {
        let q = rat(1, 3);
        let mut exact = Rational::zero();
        for n in 0..30usize {
            let law = n * (n + 1) / 2;
            exact += num_traits::pow(q.clone(), law) / q_pochhammer(&q, &q, n);
        }
        let p = TasoevSumParams::new(qr(1, 1), qr(0, 1), q, ShiftLaw::Triangular);
        let s = tasoev_sum(&p, 40).unwrap();
        // the 30-term sum differs from the limit by far less than 10^-40
        assert!(s.widen(&Rational::new(BigInt::one(), BigInt::from(10).pow(60))).contains(&exact));
    }

    #[test]
    fn tas1_value_matches_cf() {
        // [0; 3, 5, 9, 17, ...] = [0; 1 + 2^n]
        let v = tas2_closed(&rat(1, 1), &rat(1, 1), &rat(1, 1), &rat(2, 1)).unwrap().enclose(40).unwrap();
        let cf =
            RegularCF::from_fn(|n| Some(if n == 0 { BigInt::zero() } else { BigInt::one() + (BigInt::one() << n) }));
        let w = certified_value(&cf, 40).unwrap();
        assert!(v.overlaps(&w));
        assert!(v.narrower_than_digits(40));
    }

    #[test]
    fn h1_vanishing_prefactor() {
        let v = h1_ratio(&qr(1, 1), &qr(2, 1), &qr(1, 1), &qr(1, 1), &rat(1, 2), 20).unwrap();
        assert!(v.is_point() && v.contains(&Rational::zero()));
    }

    #[test]
    fn h1_against_direct_evaluation() {
        let (a, b, c, d, q) = (qr(1, 2), qr(-3, 2), qr(2, 1), qr(3, 1), rat(-1, 3));
        let ratio = h1_ratio(&a, &b, &c, &d, &q, 30).unwrap();
        let g = h1_gcf(&a, &b, &c, &d, &q);
        let h = eval_gcf(&g, 50).unwrap();
        let direct = h.recip().unwrap().add_rational(&-Rational::one());
        let iv = direct.interval_bits(200);
        assert!(ratio.widen(&Rational::new(BigInt::one(), BigInt::from(10).pow(30))).overlaps(&iv));
    }
}
