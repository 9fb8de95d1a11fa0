use cfam_core::cf::certified_value_budget;
use cfam_core::families::{family, quotients, FamilyError, ParamSet};
use cfam_core::numerics::{IntervalReal, Rational};
use num_bigint::BigInt;
use num_traits::Signed;

fn ps(text: &str) -> ParamSet {
    ParamSet::parse(text).unwrap()
}

fn qs(id: &str, params: &str, n: usize) -> Vec<i64> {
    quotients(id, &ps(params), n).unwrap().iter().map(|q| i64::try_from(q).expect("small quotient")).collect()
}

/// `s` as an exact rational, e.g. "0.25" -> 1/4.
fn dec(s: &str) -> Rational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let n: BigInt = format!("{int}{frac}").parse().unwrap();
    Rational::new(n, BigInt::from(10).pow(frac.len() as u32))
}

fn near(iv: &IntervalReal, x: &Rational, digits: u32) -> bool {
    let tol = Rational::new(BigInt::from(1), BigInt::from(10).pow(digits));
    let d = (iv.lo_rational() + iv.hi_rational()) / Rational::from_integer(BigInt::from(2)) - x;
    d.abs() < tol
}

#[test]
fn expansion_examples() {
    assert_eq!(qs("tas1", "c=1,d=1,m=2", 5), [3, 5, 9, 17, 33]);
    assert_eq!(qs("tas3", "e=1,f=1,u=2,v=3", 6), [2, 3, 4, 9, 8, 27]);
    assert_eq!(qs("exp_4n2s", "s=1", 4), [2, 6, 10, 14]);
    assert_eq!(qs("fib_prefix", "k=2,c=1,d=1,m=2", 6), [1, 1, 3, 1, 1, 5]);
    assert_eq!(qs("tanh_uv", "u=1,v=1", 5), [1, 3, 5, 7, 9]);
    assert_eq!(qs("lehmer_ap", "a=1,b=1", 5), [1, 2, 3, 4, 5]);
    assert_eq!(qs("lehmer_interlaced", "a=1,b=2,c=2,d=2", 6), [1, 2, 3, 4, 5, 6]);
    assert_eq!(qs("fin_ap", "a=1,b=1,c=1,n=1", 10), Vec::<i64>::new());
}

#[test]
fn hypotheses_are_reported_verbatim() {
    let err = family("tas1").unwrap().validate(&ps("c=-5,d=1,m=2")).unwrap_err();
    assert_eq!(err[0].constraint, "c + dm > 0");

    let err = family("fin_interlaced").unwrap().validate(&ps("f=1,h=2,g=3,k=4,n=1")).unwrap_err();
    assert_eq!(err[0].constraint, "2gh = k(2f+h)");
    assert_eq!(err[0].detail, "12 != 16");

    assert!(family("hp_lehmer").unwrap().validate(&ps("a=1,b=1,u=1,v=1,p=1")).is_err());
    assert!(matches!(quotients("tas1", &ps("c=1,m=2"), 3), Err(FamilyError::Invalid { .. })));
    assert!(matches!(quotients("tas9", &ps("c=1"), 3), Err(FamilyError::Unknown(_))));
}

#[test]
fn special_cases_coincide() {
    let tas1 = qs("tas1", "c=2,d=1/2,m=4", 12);
    assert_eq!(qs("tas2", "c=2,e=2,d=1/2,m=4", 12), tas1);
    assert_eq!(qs("apinter", "prefix=,c=2,d=1/2,m=4", 12), tas1);
}

#[test]
fn closed_form_spot_values() {
    // tanh(1/2)
    let v = family("exp_4n2s").unwrap().closed_form(&ps("s=1"), 25).unwrap();
    assert!(near(&v, &dec("0.46211715726000975850"), 19), "{v:?}");
    // I_0(2) / I_1(2) is the reciprocal
    let v = family("lehmer_ap").unwrap().closed_form(&ps("a=1,b=1"), 25).unwrap();
    let inv = Rational::from_integer(BigInt::from(1)) / dec("1.43312742672231175831");
    assert!(near(&v, &inv, 18), "{v:?}");
}

#[test]
fn finite_families_are_exact() {
    for (id, p) in [("fin_ap", "a=2,b=3,c=5,n=6"), ("fin_interlaced", "f=1,g=2,h=2,k=2,n=4")] {
        let f = family(id).unwrap();
        let cf = f.expansion(&ps(p)).unwrap();
        let got = certified_value_budget(&cf, 30, 100).unwrap();
        let exact = f.closed_form_real(&ps(p)).unwrap();
        assert_eq!(got.exact.as_ref(), exact.as_exact(), "{id}");
    }
}
