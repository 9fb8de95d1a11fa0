use cfam_core::cf::{eval_finite, rcf_expand, regularize_finite, ExpandedQuotient, RegularCF};
use cfam_core::families::ParamSet;
use cfam_core::numerics::{format_rational, parse_rational, IntervalReal, QuadElem, Rational, Real};
use cfam_core::transform::corfl_lift;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn interval_ops_contain_exact_results(a in rational(), b in rational(), prec in 8u32..120) {
        let (x, y) = (IntervalReal::from_rational(&a, prec), IntervalReal::from_rational(&b, prec));
        prop_assert!(x.add(&y).contains(&(&a + &b)));
        prop_assert!(x.sub(&y).contains(&(&a - &b)));
        prop_assert!(x.mul(&y).contains(&(&a * &b)));
        if b != Rational::from_integer(0.into()) {
            prop_assert!(x.div(&y).unwrap().contains(&(&a / &b)));
        }
    }

    #[test]
    fn quadratic_inverse(x in rational(), y in rational(), d in 2i64..60) {
        let u = QuadElem::new(x, y, BigInt::from(d)).unwrap();
        prop_assume!(!u.is_zero());
        let one = u.checked_mul(&u.recip().unwrap()).unwrap();
        prop_assert_eq!(one, QuadElem::from_int(1));
    }

    #[test]
    fn regularize_keeps_value(qs in prop::collection::vec(-20i64..=20, 1..12)) {
        let qs = ints(&qs);
        if let Ok(v) = eval_finite(&qs) {
            let out = regularize_finite(&qs).unwrap();
            prop_assert!(out.iter().skip(1).all(|q| q > &BigInt::from(0)));
            prop_assert_eq!(eval_finite(&out).unwrap(), v);
        }
    }

    #[test]
    fn rational_expansion_round_trip(r in rational()) {
        let qs: Vec<BigInt> = rcf_expand(&Real::exact(r.clone()), 100)
            .unwrap()
            .into_iter()
            .map(|q| match q {
                ExpandedQuotient::Certified(a) => a,
                ExpandedQuotient::Uncertified { .. } => unreachable!("rationals expand exactly"),
            })
            .collect();
        prop_assert_eq!(eval_finite(&qs).unwrap(), r);
    }

    #[test]
    fn lift_adds_one_over_p(tail in prop::collection::vec(1i64..30, 1..8), p in 2i64..9) {
        // the lift needs p^2 to divide every odd-indexed quotient
        let mut base = vec![0];
        base.extend(tail.iter().enumerate().map(|(i, &a)| if i % 2 == 0 { a * p * p } else { a }));
        let base = ints(&base);
        let lifted = corfl_lift(&BigInt::from(p), &RegularCF::from_quotients(base.clone())).unwrap();
        let signed = lifted.prefix(2 * base.len() + 2).unwrap();
        let diff = eval_finite(&signed).unwrap() - eval_finite(&base).unwrap();
        prop_assert_eq!(diff, Rational::new(BigInt::from(1), BigInt::from(p)));
    }

    #[test]
    fn param_text_round_trip(
        c in -50i64..50,
        d in rational(),
        prefix in prop::collection::vec(1i64..9, 0..5),
    ) {
        let list: Vec<String> = prefix.iter().map(|x| x.to_string()).collect();
        let text = format!("c={c},d={},prefix={}", format_rational(&d), list.join(":"));
        let p = ParamSet::parse(&text).unwrap();
        prop_assert_eq!(ParamSet::parse(&p.to_string()).unwrap(), p);
    }
}
