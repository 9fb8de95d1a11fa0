use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cf::{regularize, RegularCF};
use crate::numerics::{NumericsError, QuadElem, Rational, Real};
use crate::qseries::{tas2_closed, tasoev_real, ShiftLaw, TasoevSumParams};
use crate::transform::{corfl_lift, iterated_lift, lift_offset};

use super::params::{frac, int, list, Args, Checks, ParamSpec, Violation};
use super::{EvalError, FamilySpec};

pub(super) fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(super) fn rb(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Expansion `[f(0); f(1), f(2), ...]`; every value must be an integer.
pub(super) fn stream<F>(f: F) -> RegularCF
where
    F: Fn(usize) -> Rational + Send + Sync + 'static,
{
    RegularCF::from_fn(move |n| {
        let v = f(n);
        debug_assert!(v.is_integer(), "non-integral quotient {v} at {n}");
        Some(v.to_integer())
    })
}

/// `[0; c + (dc/e) m, e + d m^2, c + (dc/e) m^3, ...]`, any signs.
pub(super) fn tas2_stream(c: Rational, e: Rational, d: Rational, m: Rational) -> RegularCF {
    let ratio = &d * &c / &e;
    stream(move |n| match n {
        0 => Rational::zero(),
        n if n % 2 == 1 => &c + &ratio * num_traits::pow(m.clone(), n),
        n => &e + &d * num_traits::pow(m.clone(), n),
    })
}

/// `[0; e u, f v, e u^2, f v^2, ...]`.
pub(super) fn tas3_stream(e: Rational, f: Rational, u: Rational, v: Rational) -> RegularCF {
    stream(move |n| match n {
        0 => Rational::zero(),
        n if n % 2 == 1 => &e * num_traits::pow(u.clone(), n.div_ceil(2)),
        n => &f * num_traits::pow(v.clone(), n / 2),
    })
}

/// `1/(eu) - (N/D) / (e^2 f u^2 v + e)` with the two q-series in `q = 1/(uv)`.
pub(super) fn tas3_closed(e: &Rational, f: &Rational, u: &Rational, v: &Rational) -> Result<Real, NumericsError> {
    let q = (u * v).recip();
    let ef = e * f;
    let beta = QuadElem::from_rational(ef.recip());
    let g_top = QuadElem::from_rational(-(&ef * u * u * u * v * v).recip());
    let g_bot = QuadElem::from_rational(-(&ef * u * u * v).recip());
    let top = tasoev_real(&TasoevSumParams::new(beta.clone(), g_top, q.clone(), ShiftLaw::Shifted))?;
    let bot = tasoev_real(&TasoevSumParams::new(beta, g_bot, q, ShiftLaw::Triangular))?;
    let scale = (e * e * f * u * u * v + e).recip();
    Ok(top.div(&bot)?.mul_rational(&-scale).add_rational(&(e * u).recip()))
}

const DENS: &[i64] = &[1, 2, 3];

// ---- tas1 -------------------------------------------------------------

const TAS1_PARAMS: &[ParamSpec] = &[int("c", -3, 10), frac("d", 0, 10, DENS), int("m", 2, 10)];

fn tas1_validate(a: &Args) -> Vec<Violation> {
    let (c, d, m) = (a.rat("c"), a.rat("d"), a.rat("m"));
    let mut k = Checks::default();
    k.at_least("m", &m, 2);
    k.positive("d > 0", &d);
    k.natural("dm in N", &(&d * &m));
    k.positive("c + dm > 0", &(&c + &d * &m));
    k.done()
}

pub(super) const TAS1: FamilySpec = FamilySpec::new(
    "tas1",
    "[0; c + d m^n]_{n>=1} = 1/(md + a) * N/D with a, b = (c -+ sqrt(c^2 + 4))/2",
    TAS1_PARAMS,
    tas1_validate,
    |a| Ok(tas2_stream(a.rat("c"), a.rat("c"), a.rat("d"), a.rat("m"))),
    |a| Ok(tas2_closed(&a.rat("c"), &a.rat("c"), &a.rat("d"), &a.rat("m"))?),
);

// ---- tas2 and its sign variants ----------------------------------------

const TAS2_PARAMS: &[ParamSpec] = &[int("c", -3, 10), int("e", -3, 10), frac("d", 0, 10, DENS), int("m", 2, 10)];

/// Shared hypotheses; returns `dcm/e` when it is defined.
fn tas2_common(a: &Args, k: &mut Checks) -> Option<(Rational, Rational)> {
    let (c, e, d, m) = (a.rat("c"), a.rat("e"), a.rat("d"), a.rat("m"));
    k.at_least("m", &m, 2);
    k.positive("d > 0", &d);
    k.nonzero("c != 0", &c);
    k.nonzero("e != 0", &e);
    let dm2 = &d * &m * &m;
    k.natural("dm^2 in N", &dm2);
    if c.is_zero() || e.is_zero() {
        return None;
    }
    let dcme = &d * &c * &m / &e;
    k.natural("dcm/e in N", &dcme);
    Some((dcme, dm2))
}

fn tas2_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    if let Some((dcme, dm2)) = tas2_common(a, &mut k) {
        k.positive("c + dcm/e > 0", &(a.rat("c") + dcme));
        k.positive("e + dm^2 > 0", &(a.rat("e") + dm2));
    }
    k.done()
}

pub(super) const TAS2: FamilySpec = FamilySpec::new(
    "tas2",
    "[0; c + (dc/e) m^{2n-1}, e + d m^{2n}]_{n>=1} = (e/c)/(md + a) * N/D with a, b = (e -+ sqrt(e^2 + 4e/c))/2",
    TAS2_PARAMS,
    tas2_validate,
    |a| Ok(tas2_stream(a.rat("c"), a.rat("e"), a.rat("d"), a.rat("m"))),
    |a| Ok(tas2_closed(&a.rat("c"), &a.rat("e"), &a.rat("d"), &a.rat("m"))?),
);

fn neg_i_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    if let Some((dcme, dm2)) = tas2_common(a, &mut k) {
        k.positive("dcm/e - c - 2 > 0", &(dcme - a.rat("c") - r(2)));
        k.positive("dm^2 + e - 2 > 0", &(dm2 + a.rat("e") - r(2)));
    }
    k.done()
}

pub(super) const TAS2_NEG_I: FamilySpec = FamilySpec::new(
    "tas2_neg_i",
    "[0; 1, (dc/e) m^{2n-1} - c - 2, 1, d m^{2n} + e - 2]_{n>=1} = 1 + tas2 right side with m -> -m",
    TAS2_PARAMS,
    neg_i_validate,
    |a| {
        let signed = tas2_stream(a.rat("c"), a.rat("e"), a.rat("d"), -a.rat("m"));
        Ok(regularize(&signed).shift_head(BigInt::one()))
    },
    |a| Ok(tas2_closed(&a.rat("c"), &a.rat("e"), &a.rat("d"), &-a.rat("m"))?.add_rational(&r(1))),
);

fn neg_ii_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    if let Some((dcme, dm2)) = tas2_common(a, &mut k) {
        k.positive("dcm/e + c - 1 > 0", &(dcme + a.rat("c") - r(1)));
        k.positive("dm^2 - e - 2 > 0", &(dm2 - a.rat("e") - r(2)));
    }
    k.done()
}

pub(super) const TAS2_NEG_II: FamilySpec = FamilySpec::new(
    "tas2_neg_ii",
    "[0; (dc/e) m + c - 1, 1, d m^{2n} - e - 2, 1, (dc/e) m^{2n+1} + c - 2]_{n>=1} = tas2 right side with d -> -d, m -> -m",
    TAS2_PARAMS,
    neg_ii_validate,
    |a| Ok(regularize(&tas2_stream(a.rat("c"), a.rat("e"), -a.rat("d"), -a.rat("m")))),
    |a| Ok(tas2_closed(&a.rat("c"), &a.rat("e"), &-a.rat("d"), &-a.rat("m"))?),
);

// ---- tas3 ---------------------------------------------------------------

const TAS3_PARAMS: &[ParamSpec] = &[frac("e", 0, 10, DENS), frac("f", 0, 10, DENS), int("u", 2, 10), int("v", 2, 10)];

fn tas3_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    k.at_least("u", &a.rat("u"), 2);
    k.at_least("v", &a.rat("v"), 2);
    k.natural("eu in N", &(a.rat("e") * a.rat("u")));
    k.natural("fv in N", &(a.rat("f") * a.rat("v")));
    k.done()
}

pub(super) const TAS3: FamilySpec = FamilySpec::new(
    "tas3",
    "[0; e u^n, f v^n]_{n>=1} = 1/(eu) - 1/(e^2 f u^2 v + e) * N/D in q = 1/(uv)",
    TAS3_PARAMS,
    tas3_validate,
    |a| Ok(tas3_stream(a.rat("e"), a.rat("f"), a.rat("u"), a.rat("v"))),
    |a| Ok(tas3_closed(&a.rat("e"), &a.rat("f"), &a.rat("u"), &a.rat("v"))?),
);

// ---- prefixed blocks ---------------------------------------------------

/// `(P_k, Q_k, Q_{k-1})` for `[0; a_1, ..., a_k]`.
fn prefix_convergent(prefix: &[BigInt]) -> (BigInt, BigInt, BigInt) {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    for a in prefix {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    (p1, q1, q0)
}

/// `[0; prefix, x_1, prefix, x_2, ...]` where `x_n` is the n-th block entry.
fn block_stream<F>(prefix: Vec<BigInt>, entry: F) -> RegularCF
where
    F: Fn(usize) -> Rational + Send + Sync + 'static,
{
    let k = prefix.len();
    stream(move |n| {
        if n == 0 {
            return Rational::zero();
        }
        let j = n - 1;
        let (block, pos) = (j / (k + 1), j % (k + 1));
        if pos < k {
            rb(&prefix[pos])
        } else {
            entry(block + 1)
        }
    })
}

struct Blocks {
    p: Rational,
    q: Rational,
    big_c: Rational,
    big_e: Rational,
}

fn blocks(prefix: &[BigInt], c: &Rational, e: &Rational) -> Blocks {
    let (p, q, q_prev) = prefix_convergent(prefix);
    let base = rb(&q_prev) + rb(&p);
    Blocks { p: rb(&p), q: rb(&q), big_c: &base + c * rb(&q), big_e: &base + e * rb(&q) }
}

/// `P_k/Q_k + (1/Q_k) [0; s C + (s C d Q_k/E) m^{2n-1}, E + d Q_k m^{2n}]`
/// with `s = (-1)^k`.
fn prefixed_closed(
    prefix: &[BigInt],
    c: &Rational,
    e: &Rational,
    d: &Rational,
    m: &Rational,
) -> Result<Real, EvalError> {
    let b = blocks(prefix, c, e);
    let sign = if prefix.len().is_multiple_of(2) { r(1) } else { r(-1) };
    let inner = tas2_closed(&(&sign * &b.big_c), &b.big_e, &(d * &b.q), m)?;
    Ok(inner.mul_rational(&b.q.recip()).add_rational(&(&b.p / &b.q)))
}

const APINTER2_EVEN_PARAMS: &[ParamSpec] = &[
    list("prefix", &[&[1, 1], &[1, 2], &[2, 1], &[2, 3], &[1, 1, 1, 1]]),
    int("c", 0, 10),
    int("e", 0, 10),
    frac("d", 0, 10, DENS),
    int("m", 2, 10),
];

const APINTER2_ODD_PARAMS: &[ParamSpec] = &[
    list("prefix", &[&[1], &[2], &[3], &[1, 1, 1], &[2, 1, 2]]),
    int("c", 0, 10),
    int("e", 0, 10),
    frac("d", 0, 10, DENS),
    int("m", 2, 10),
];

fn apinter2_validate(a: &Args, even: bool) -> Vec<Violation> {
    let prefix = a.list("prefix");
    let (c, e, d, m) = (a.rat("c"), a.rat("e"), a.rat("d"), a.rat("m"));
    let mut k = Checks::default();
    let len = prefix.len();
    if even {
        k.require(len >= 2 && len.is_multiple_of(2), "prefix length k is even and positive", || format!("k = {len}"));
    } else {
        k.require(len % 2 == 1, "prefix length k is odd", || format!("k = {len}"));
    }
    k.at_least("m", &m, 2);
    k.positive("d > 0", &d);
    k.natural("dm in N", &(&d * &m));
    let b = blocks(&prefix, &c, &e);
    k.nonzero("C != 0", &b.big_c);
    k.nonzero("E != 0", &b.big_e);
    if !b.big_c.is_zero() && !b.big_e.is_zero() {
        let cdme = &b.big_c * &d * &m / &b.big_e;
        k.natural("Cdm/E in N", &cdme);
        k.positive("c + Cdm/E > 0", &(&c + &cdme));
        if !even {
            // the roots (E -+ sqrt(E^2 - 4E/C))/2 must be real
            k.require(&b.big_c * &b.big_e >= r(4), "CE >= 4", || format!("CE = {}", &b.big_c * &b.big_e));
        }
    }
    k.positive("e + dm^2 > 0", &(&e + &d * &m * &m));
    k.done()
}

fn apinter2_expand(a: &Args) -> Result<RegularCF, EvalError> {
    let prefix = a.list("prefix");
    let (c, e, d, m) = (a.rat("c"), a.rat("e"), a.rat("d"), a.rat("m"));
    let b = blocks(&prefix, &c, &e);
    let ratio = &b.big_c / &b.big_e * &d;
    let cf = block_stream(prefix, move |n| {
        let mn = num_traits::pow(m.clone(), n);
        if n % 2 == 1 {
            &c + &ratio * mn
        } else {
            &e + &d * mn
        }
    });
    Ok(regularize(&cf))
}

fn apinter2_closed(a: &Args) -> Result<Real, EvalError> {
    prefixed_closed(&a.list("prefix"), &a.rat("c"), &a.rat("e"), &a.rat("d"), &a.rat("m"))
}

const APINTER2_IDENTITY: &str =
    "[0; a_1..a_k, c + (C/E) d m^{2n-1}, a_1..a_k, e + d m^{2n}]_{n>=1} = P_k/Q_k + (+-E/C)/(Q_k (m d Q_k + a)) * N/D";

pub(super) const APINTER2_EVEN: FamilySpec = FamilySpec::new(
    "apinter2_even",
    APINTER2_IDENTITY,
    APINTER2_EVEN_PARAMS,
    |a| apinter2_validate(a, true),
    apinter2_expand,
    apinter2_closed,
);

pub(super) const APINTER2_ODD: FamilySpec = FamilySpec::new(
    "apinter2_odd",
    APINTER2_IDENTITY,
    APINTER2_ODD_PARAMS,
    |a| apinter2_validate(a, false),
    apinter2_expand,
    apinter2_closed,
);

const APINTER_PARAMS: &[ParamSpec] = &[
    list("prefix", &[&[], &[1], &[2], &[1, 1], &[1, 2], &[3, 1, 2]]),
    int("c", -3, 10),
    frac("d", 0, 10, DENS),
    int("m", 2, 10),
];

fn apinter_validate(a: &Args) -> Vec<Violation> {
    let prefix = a.list("prefix");
    let (c, d, m) = (a.rat("c"), a.rat("d"), a.rat("m"));
    let mut k = Checks::default();
    k.at_least("m", &m, 2);
    k.positive("d > 0", &d);
    k.natural("dm in N", &(&d * &m));
    k.positive("c + dm > 0", &(&c + &d * &m));
    if prefix.len() % 2 == 1 {
        let b = blocks(&prefix, &c, &c);
        k.require(b.big_c.abs() >= r(2), "|C| >= 2", || format!("C = {}", b.big_c));
    }
    k.done()
}

pub(super) const APINTER: FamilySpec = FamilySpec::new(
    "apinter",
    "[0; a_1..a_k, c + d m^n]_{n>=1} = P_k/Q_k + (+-1)/(Q_k (m d Q_k + a)) * N/D with C = Q_{k-1} + P_k + c Q_k",
    APINTER_PARAMS,
    apinter_validate,
    |a| {
        let (c, d, m) = (a.rat("c"), a.rat("d"), a.rat("m"));
        let cf = block_stream(a.list("prefix"), move |n| &c + &d * num_traits::pow(m.clone(), n));
        Ok(regularize(&cf))
    },
    |a| prefixed_closed(&a.list("prefix"), &a.rat("c"), &a.rat("c"), &a.rat("d"), &a.rat("m")),
);

const FIB_PARAMS: &[ParamSpec] = &[int("k", 2, 10), int("c", -3, 10), frac("d", 0, 10, DENS), int("m", 2, 10)];

fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let t = &a + &b;
        a = std::mem::replace(&mut b, t);
    }
    a
}

fn fib_validate(a: &Args) -> Vec<Violation> {
    let (kk, c, d, m) = (a.rat("k"), a.rat("c"), a.rat("d"), a.rat("m"));
    let mut k = Checks::default();
    k.at_least("k", &kk, 2);
    k.require(a.int("k") % 2 == BigInt::zero(), "k is even", || format!("k = {kk}"));
    k.at_least("m", &m, 2);
    k.positive("d > 0", &d);
    k.natural("dm in N", &(&d * &m));
    k.positive("c + dm > 0", &(&c + &d * &m));
    k.done()
}

/// `F_k/F_{k+1} + (1/F_{k+1}) [0; C + d F_{k+1} m^n]` with `C = 2F_k + c F_{k+1}`.
fn fib_closed(a: &Args) -> Result<Real, EvalError> {
    let k = a.small("k") as usize;
    let (fk, fk1) = (rb(&fibonacci(k)), rb(&fibonacci(k + 1)));
    let big_c = r(2) * &fk + a.rat("c") * &fk1;
    let inner = tas2_closed(&big_c, &big_c, &(a.rat("d") * &fk1), &a.rat("m"))?;
    Ok(inner.mul_rational(&fk1.recip()).add_rational(&(fk / fk1)))
}

pub(super) const FIB_PREFIX: FamilySpec = FamilySpec::new(
    "fib_prefix",
    "[0; 1 (k times), c + d m^n]_{n>=1} = F_k/F_{k+1} + 1/(F_{k+1}(m d F_{k+1} + a)) * N/D with C = 2F_k + c F_{k+1}",
    FIB_PARAMS,
    fib_validate,
    |a| {
        let (c, d, m) = (a.rat("c"), a.rat("d"), a.rat("m"));
        let ones = vec![BigInt::one(); a.small("k") as usize];
        Ok(block_stream(ones, move |n| &c + &d * num_traits::pow(m.clone(), n)))
    },
    fib_closed,
);

// ---- lifted Tasoev families -------------------------------------------

const T1EX_PARAMS: &[ParamSpec] =
    &[int("c", 1, 10), int("e", 1, 10), frac("d", 0, 10, DENS), int("m", 2, 10), int("p", 2, 10)];

fn t1ex_validate(a: &Args) -> Vec<Violation> {
    let (c, e, d, m, p) = (a.rat("c"), a.rat("e"), a.rat("d"), a.rat("m"), a.rat("p"));
    let mut k = Checks::default();
    k.at_least("m", &m, 2);
    k.at_least("p", &p, 2);
    k.positive("d > 0", &d);
    k.nonzero("c != 0", &c);
    k.nonzero("e != 0", &e);
    k.natural("dm in N", &(&d * &m));
    if !e.is_zero() && !c.is_zero() {
        let dcme = &d * &c * &m / &e;
        k.natural("dcm/e in N", &dcme);
        k.positive("c + dcm/e - 1 > 0", &(&c + dcme - r(1)));
    }
    k.positive("e + dm^2 - 1 > 0", &(&e + &d * &m * &m - r(1)));
    k.done()
}

pub(super) const T1EX: FamilySpec = FamilySpec::new(
    "t1ex",
    "[0; p-1, 1, c + (dc/e) m^{2n-1} - 1, p-1, 1, e + d m^{2n} - 1]_{n>=1} = 1/p + tas2 right side with c -> c p^2",
    T1EX_PARAMS,
    t1ex_validate,
    |a| {
        let p = a.int("p");
        let p2 = rb(&(&p * &p));
        let base = tas2_stream(a.rat("c") * p2, a.rat("e"), a.rat("d"), a.rat("m"));
        Ok(regularize(&corfl_lift(&p, &base)?))
    },
    |a| {
        let p = a.rat("p");
        let v = tas2_closed(&(a.rat("c") * &p * &p), &a.rat("e"), &a.rat("d"), &a.rat("m"))?;
        Ok(v.add_rational(&p.recip()))
    },
);

const T3EX_PARAMS: &[ParamSpec] =
    &[frac("e", 0, 10, DENS), frac("f", 0, 10, DENS), int("u", 2, 10), int("v", 2, 10), int("p", 2, 10)];

fn t3ex_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    k.at_least("u", &a.rat("u"), 2);
    k.at_least("v", &a.rat("v"), 2);
    k.at_least("p", &a.rat("p"), 2);
    k.natural("eu - 1 in N", &(a.rat("e") * a.rat("u") - r(1)));
    k.natural("fv - 1 in N", &(a.rat("f") * a.rat("v") - r(1)));
    k.done()
}

pub(super) const T3EX: FamilySpec = FamilySpec::new(
    "t3ex",
    "[0; p-1, 1, e u^n - 1, p-1, 1, f v^n - 1]_{n>=1} = 1/p + tas3 right side with e -> e p^2",
    T3EX_PARAMS,
    t3ex_validate,
    |a| {
        let p = a.int("p");
        let p2 = rb(&(&p * &p));
        let base = tas3_stream(a.rat("e") * p2, a.rat("f"), a.rat("u"), a.rat("v"));
        Ok(regularize(&corfl_lift(&p, &base)?))
    },
    |a| {
        let p = a.rat("p");
        let v = tas3_closed(&(a.rat("e") * &p * &p), &a.rat("f"), &a.rat("u"), &a.rat("v"))?;
        Ok(v.add_rational(&p.recip()))
    },
);

const LONG24_PARAMS: &[ParamSpec] = &[
    int("e", 1, 10),
    int("f", 1, 10),
    int("p", 2, 10),
    int("q", 2, 10),
    int("r", 3, 10),
    int("u", 2, 10),
    int("v", 2, 10),
];

fn long24_validate(a: &Args) -> Vec<Violation> {
    let mut k = Checks::default();
    k.at_least("e", &a.rat("e"), 1);
    k.at_least("f", &a.rat("f"), 1);
    k.at_least("p", &a.rat("p"), 2);
    k.at_least("q", &a.rat("q"), 2);
    k.at_least("r", &a.rat("r"), 3);
    k.at_least("u", &a.rat("u"), 2);
    k.at_least("v", &a.rat("v"), 2);
    k.done()
}

fn long24_big_e(a: &Args) -> Rational {
    let (p, q, rr) = (a.rat("p"), a.rat("q"), a.rat("r"));
    a.rat("e") * &p * &p * num_traits::pow(q, 4) * num_traits::pow(rr, 8)
}

pub(super) const LONG24: FamilySpec = FamilySpec::new(
    "long24",
    "24-entry quasi-period from three nested lifts of [0; e u^n, f v^n] = 1/(p q^2 r^4) + 1/(q r^2) + 1/r + tas3 right side with e -> e p^2 q^4 r^8",
    LONG24_PARAMS,
    long24_validate,
    |a| {
        let base = tas3_stream(long24_big_e(a), a.rat("f"), a.rat("u"), a.rat("v"));
        let ps = [a.int("p"), a.int("q"), a.int("r")];
        Ok(regularize(&iterated_lift(&ps, &base)?))
    },
    |a| {
        let ps = [a.int("p"), a.int("q"), a.int("r")];
        let v = tas3_closed(&long24_big_e(a), &a.rat("f"), &a.rat("u"), &a.rat("v"))?;
        Ok(v.add_rational(&lift_offset(&ps)))
    },
);
