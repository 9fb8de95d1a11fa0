use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::numerics::{IntervalReal, NumericsError, QuadElem, Rational, Real};

use super::series::sum_series;
use super::SurdArg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementaryFn {
    Exp,
    Tan,
    Tanh,
}

impl fmt::Display for ElementaryFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementaryFn::Exp => "exp",
            ElementaryFn::Tan => "tan",
            ElementaryFn::Tanh => "tanh",
        })
    }
}

impl FromStr for ElementaryFn {
    type Err = NumericsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp" => Ok(ElementaryFn::Exp),
            "tan" => Ok(ElementaryFn::Tan),
            "tanh" => Ok(ElementaryFn::Tanh),
            other => Err(NumericsError::Domain(format!("unknown function {other:?}"))),
        }
    }
}

/// `sum_k s^k y^k / (2k + offset)!` for `offset` in {0, 1}, `s = +-1`.
fn even_odd_series(y: &Rational, offset: usize, alternating: bool, bits: u32) -> Result<IntervalReal, NumericsError> {
    let signed = if alternating { -y.clone() } else { y.clone() };
    let next = |k: usize, prev: &Rational| -> Result<Rational, NumericsError> {
        let lo = 2 * k - 1 + offset;
        Ok(prev * &signed / Rational::from_integer((lo * (lo + 1)).into()))
    };
    let yabs = y.abs();
    let ratio = |n: usize| -> Option<Rational> {
        let lo = 2 * n + 1 + offset;
        Some(&yabs / Rational::from_integer((lo * (lo + 1)).into()))
    };
    sum_series(Rational::one(), next, ratio, bits)?.enclose(bits)
}

fn exp_rational(x: &Rational, bits: u32) -> Result<IntervalReal, NumericsError> {
    let next = |k: usize, prev: &Rational| -> Result<Rational, NumericsError> {
        Ok(prev * x / Rational::from_integer(k.into()))
    };
    let xabs = x.abs();
    let ratio = |n: usize| -> Option<Rational> { Some(&xabs / Rational::from_integer((n + 1).into())) };
    sum_series(Rational::one(), next, ratio, bits)?.enclose(bits)
}

/// `scale * f(arg)`; for tan and tanh the product `scale * arg` is formed
/// exactly, so prefactors such as `sqrt(v/u)` against `1/sqrt(uv)` collapse.
pub fn elementary_scaled(f: ElementaryFn, arg: &SurdArg, scale: &QuadElem) -> Result<Real, NumericsError> {
    let y = arg.square();
    match f {
        ElementaryFn::Tan | ElementaryFn::Tanh => {
            if arg.is_zero() {
                return Ok(Real::exact(Rational::zero()));
            }
            let alternating = f == ElementaryFn::Tan;
            if alternating && y >= Rational::from_integer(2.into()) {
                return Err(NumericsError::Domain(format!("tan argument {arg} too close to a pole")));
            }
            let pre = match scale.checked_mul(&arg.to_quad()) {
                Ok(u) => Real::from_quad(u),
                Err(_) => Real::from_quad(scale.clone()).mul(&Real::from_quad(arg.to_quad())),
            };
            let y1 = y.clone();
            let odd = Real::from_fn(move |bits| even_odd_series(&y1, 1, alternating, bits));
            let even = Real::from_fn(move |bits| even_odd_series(&y, 0, alternating, bits));
            Ok(pre.mul(&odd.div(&even)?))
        }
        ElementaryFn::Exp => {
            let value = if arg.radicand.is_one() {
                let x = arg.coeff.clone();
                Real::from_fn(move |bits| exp_rational(&x, bits))
            } else {
                // cosh x + x * sinh(x)/x
                let y1 = y.clone();
                let odd = Real::from_fn(move |bits| even_odd_series(&y1, 1, false, bits));
                let even = Real::from_fn(move |bits| even_odd_series(&y, 0, false, bits));
                even.add(&Real::from_quad(arg.to_quad()).mul(&odd))
            };
            Ok(match scale.as_rational() {
                Some(r) if r.is_one() => value,
                _ => Real::from_quad(scale.clone()).mul(&value),
            })
        }
    }
}

pub fn elementary_real(f: ElementaryFn, arg: &SurdArg) -> Result<Real, NumericsError> {
    elementary_scaled(f, arg, &QuadElem::from_rational(Rational::one()))
}

pub fn elementary_interval(f: ElementaryFn, arg: &SurdArg, digits: u32) -> Result<IntervalReal, NumericsError> {
    elementary_real(f, arg)?.enclose(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{certified_value, rcf_expand, ExpandedQuotient, RegularCF};
    use crate::numerics::rat;
    use num_bigint::BigInt;

    #[test]
    fn tanh_zero_is_exact() {
        let v = elementary_interval(ElementaryFn::Tanh, &SurdArg::rational(rat(0, 1)), 20).unwrap();
        assert!(v.is_point() && v.contains(&rat(0, 1)));
    }

    #[test]
    fn tan_one_expansion() {
        let t = elementary_real(ElementaryFn::Tan, &SurdArg::rational(rat(1, 1))).unwrap();
        let iv = t.enclose(30).unwrap();
        assert!(iv.lo_decimal(11).starts_with("1.55740772465"));
        let q: Vec<BigInt> = rcf_expand(&t, 7)
            .unwrap()
            .into_iter()
            .map(|e| match e {
                ExpandedQuotient::Certified(b) => b,
                ExpandedQuotient::Uncertified { index } => panic!("uncertified at {index}"),
            })
            .collect();
        let want: Vec<BigInt> = [1, 1, 1, 3, 1, 5, 1, 7].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(q, want);
    }

    #[test]
    fn exp_quarter_against_cf() {
        // 2 (1 - e^{-1/4}) = [0; 2, 3, 1, 5, 3, 1, 9, ...]
        let e = elementary_real(ElementaryFn::Exp, &SurdArg::rational(rat(-1, 4))).unwrap();
        let v = e.neg().add_rational(&rat(1, 1)).mul_rational(&rat(2, 1)).enclose(30).unwrap();
        let cf = RegularCF::from_fn(|n| {
            Some(BigInt::from(match n {
                0 => 0,
                1 => 2,
                _ => match (n - 2) % 3 {
                    0 => 3,
                    1 => 1,
                    _ => 2 * (2 * ((n - 2) / 3) + 3) - 1,
                },
            }))
        });
        let w = certified_value(&cf, 30).unwrap();
        assert!(v.overlaps(&w), "{} {}", v.lo_decimal(30), w.lo_decimal(30));
    }

    #[test]
    fn surd_exp_matches_square() {
        // exp(sqrt 2) * exp(-sqrt 2) = 1
        let a = SurdArg::new(rat(1, 1), BigInt::from(2)).unwrap();
        let b = SurdArg::new(rat(-1, 1), BigInt::from(2)).unwrap();
        let p = elementary_real(ElementaryFn::Exp, &a).unwrap().mul(&elementary_real(ElementaryFn::Exp, &b).unwrap());
        assert!(p.enclose(30).unwrap().contains(&rat(1, 1)));
    }
}
