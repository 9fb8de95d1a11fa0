use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::Rational;

fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// `prod_{j=lo}^{hi} (a + j b)`, empty when `hi < lo`.
fn ap_product(a: &Rational, b: &Rational, lo: usize, hi: isize) -> Rational {
    let mut acc = Rational::one();
    let mut j = lo as isize;
    while j <= hi {
        acc *= a + b * Rational::from_integer(BigInt::from(j));
        j += 1;
    }
    acc
}

/// Numerator and denominator of the n-th approximant of
/// `-c/a - c/(a+b) - c/(a+2b) - ... - c/(a+(n-1)b)` from the closed sums.
pub fn finite_ap_closed(a: &Rational, b: &Rational, c: &Rational, n: usize) -> (Rational, Rational) {
    let minus_c = -c;
    let mut p = Rational::zero();
    for i in 1..=n.div_ceil(2) {
        p += binomial(n - i, i - 1) * num_traits::pow(minus_c.clone(), i) * ap_product(a, b, i, (n - i) as isize);
    }
    let mut q = Rational::zero();
    for i in 0..=n / 2 {
        q +=
            binomial(n - i, i) * num_traits::pow(minus_c.clone(), i) * ap_product(a, b, i, n as isize - 1 - i as isize);
    }
    (p, q)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Finap2Error {
    #[error("constraint 2gh = k(2f+h) violated: residual 2gh - k(2f+h) = {0}")]
    Constraint(BigInt),
    #[error("2f + h must be nonzero")]
    Degenerate,
    #[error("need n >= 1")]
    Length,
    #[error("closed-form denominator vanishes")]
    ZeroDenominator,
}

/// Value of `1/f + 1/g + 1/(f+h) + 1/(g+k) + ... + 1/(f+(n-1)h) + 1/(g+(n-1)k)`
/// from the closed ratio with `lambda = 2g/(2f+h)`.
pub fn finap2_closed(f: &BigInt, g: &BigInt, h: &BigInt, k: &BigInt, n: usize) -> Result<Rational, Finap2Error> {
    let residual = BigInt::from(2) * g * h - k * (BigInt::from(2) * f + h);
    if !residual.is_zero() {
        return Err(Finap2Error::Constraint(residual));
    }
    let two_f_h = BigInt::from(2) * f + h;
    if two_f_h.is_zero() {
        return Err(Finap2Error::Degenerate);
    }
    if n == 0 {
        return Err(Finap2Error::Length);
    }
    let lambda = Rational::new(BigInt::from(2) * g, two_f_h);
    let fr = Rational::from_integer(f.clone());
    let half_h = Rational::new(h.clone(), BigInt::from(2));
    let mut num = Rational::zero();
    for i in 1..=n {
        num += binomial(2 * n - i, i - 1)
            * num_traits::pow(lambda.clone(), 2 * n - i)
            * ap_product(&fr, &half_h, i, (2 * n - i) as isize);
    }
    let mut den = Rational::zero();
    for i in 0..=n {
        den += binomial(2 * n - i, i)
            * num_traits::pow(lambda.clone(), 2 * n - 1 - i)
            * ap_product(&fr, &half_h, i, 2 * n as isize - 1 - i as isize);
    }
    if den.is_zero() {
        return Err(Finap2Error::ZeroDenominator);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::eval_finite;
    use crate::numerics::rat;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ap_examples() {
        assert_eq!(finite_ap_closed(&rat(1, 1), &rat(1, 1), &rat(-1, 1), 3), (rat(7, 1), rat(10, 1)));
        assert_eq!(finite_ap_closed(&rat(4, 1), &rat(9, 1), &rat(5, 1), 1), (rat(-5, 1), rat(4, 1)));
    }

    #[test]
    fn finap2_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(finap2_closed(&b(1), &b(3), &b(2), &b(3), 2).unwrap(), eval_finite(&bi(&[0, 1, 3, 3, 6])).unwrap());
        assert_eq!(finap2_closed(&b(2), &b(5), &b(4), &b(5), 1).unwrap(), rat(5, 11));
        assert_eq!(
            finap2_closed(&b(2), &b(5), &b(4), &b(5), 3).unwrap(),
            eval_finite(&bi(&[0, 2, 5, 6, 10, 10, 15])).unwrap()
        );
        assert_eq!(finap2_closed(&b(1), &b(3), &b(2), &b(4), 2), Err(Finap2Error::Constraint(b(-4))));
    }
}
