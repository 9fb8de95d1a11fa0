use num_bigint::BigInt;
use num_traits::Zero;

use crate::cf::{eval_gcf, rcf_expand, regularize_finite, GeneralizedCF, RegularCF};
use crate::numerics::{NumericsError, Rational, Real};
use crate::qseries::{finap2_closed, finite_ap_closed};

use super::params::{int, Args, Checks, Violation};
use super::tasoev::r;
use super::{EvalError, FamilySpec};

/// Canonical expansion of a rational by Euclid's algorithm.
fn euclid(x: &Rational) -> Result<Vec<BigInt>, EvalError> {
    let qs = rcf_expand(&Real::exact(x.clone()), usize::MAX - 1)?;
    Ok(qs.iter().filter_map(|q| q.certified().cloned()).collect())
}

fn length(a: &Args) -> usize {
    a.small("n").clamp(0, 1 << 20) as usize
}

fn fin_ap_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    for name in ["a", "b", "c", "n"] {
        k.at_least(name, &a.rat(name), 1);
    }
    k.done()
}

/// `c/(a + c/(a+b + ... + c/(a+(n-1)b)))` evaluated term by term.
fn fin_ap_value(a: &Args) -> Result<Rational, EvalError> {
    let (aa, b, c) = (a.rat("a"), a.rat("b"), a.rat("c"));
    let terms = (0..length(a)).map(|j| (c.clone(), &aa + &b * r(j as i64))).collect();
    let gcf = GeneralizedCF::finite(Rational::zero(), terms);
    Ok(eval_gcf(&gcf, length(a))?)
}

pub(super) const FIN_AP: FamilySpec = FamilySpec::new(
    "fin_ap",
    "c/a + c/(a+b) + ... + c/(a+(n-1)b) (continued) = P_n/Q_n with P_n = sum_i C(n-i, i-1) c^i prod_{j=i}^{n-i} (a+jb), Q_n = sum_i C(n-i, i) c^i prod_{j=i}^{n-1-i} (a+jb)",
    &[int("a", 1, 10), int("b", 1, 10), int("c", 1, 10), int("n", 1, 10)],
    fin_ap_validate,
    |a| Ok(RegularCF::from_quotients(euclid(&fin_ap_value(a)?)?)),
    |a| {
        let (p, q) = finite_ap_closed(&a.rat("a"), &a.rat("b"), &-a.rat("c"), length(a));
        if q.is_zero() {
            return Err(NumericsError::DivisionByZero.into());
        }
        Ok(Real::exact(p / q))
    },
)
.finite();

fn interlaced_validate(a: &Args) -> Vec<Violation> {
    let (f, g, h, kk) = (a.rat("f"), a.rat("g"), a.rat("h"), a.rat("k"));
    let mut k = Checks::default();
    k.at_least("f", &f, 1);
    k.at_least("g", &g, 1);
    k.at_least("h", &h, 0);
    k.at_least("k", &kk, 0);
    k.at_least("n", &a.rat("n"), 1);
    k.equal("2gh = k(2f+h)", &(r(2) * &g * &h), &(&kk * (r(2) * &f + &h)));
    k.done()
}

pub(super) const FIN_INTERLACED: FamilySpec = FamilySpec::new(
    "fin_interlaced",
    "[0; f, g, f+h, g+k, ..., f+(n-1)h, g+(n-1)k] = sum_i C(2n-i, i-1) lambda^{2n-i} prod (f + jh/2) / sum_i C(2n-i, i) lambda^{2n-1-i} prod (f + jh/2) with lambda = 2g/(2f+h), when 2gh = k(2f+h)",
    &[int("f", 1, 10), int("g", 1, 10), int("h", 0, 10), int("k", 0, 10), int("n", 1, 10)],
    interlaced_validate,
    |a| {
        let (f, g, h, k) = (a.int("f"), a.int("g"), a.int("h"), a.int("k"));
        let mut qs = vec![BigInt::zero()];
        let (mut x, mut y) = (f, g);
        for _ in 0..length(a) {
            qs.push(x.clone());
            qs.push(y.clone());
            x += &h;
            y += &k;
        }
        Ok(RegularCF::from_quotients(regularize_finite(&qs)?))
    },
    |a| {
        let v = finap2_closed(&a.int("f"), &a.int("g"), &a.int("h"), &a.int("k"), length(a))?;
        Ok(Real::exact(v))
    },
)
.finite();

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::eval_finite;
    use num_traits::One;

    use super::super::tasoev::rb;

    #[test]
    fn euclid_round_trip() {
        for (p, q) in [(7, 10), (355, 113), (-5, 3), (0, 1), (1, 1)] {
            let x = Rational::new(p.into(), q.into());
            let qs = euclid(&x).unwrap();
            assert_eq!(eval_finite(&qs).unwrap(), x);
            assert!(qs.iter().skip(1).all(|a| a >= &BigInt::one()));
        }
        assert_eq!(euclid(&rb(&BigInt::from(4))).unwrap(), vec![BigInt::from(4)]);
    }
}
