use num_bigint::BigInt;
use num_traits::Zero;

use crate::cf::{regularize, RegularCF};
use crate::numerics::{QuadElem, Rational, Real};
use crate::qseries::{bessel_type_real, elementary_real, elementary_scaled, BesselRatioParams, ElementaryFn, SurdArg};
use crate::transform::corfl_lift;

use super::params::{int, Args, Checks, ParamSpec, Violation};
use super::tasoev::{r, stream};
use super::{EvalError, FamilySpec};

/// `a + (n-1) b`.
fn ap(a: &Rational, b: &Rational, n: usize) -> Rational {
    a + b * r(n as i64 - 1)
}

/// `sqrt(x/y)` as an element of a quadratic field.
fn sqrt_ratio(x: &Rational, y: &Rational) -> Result<QuadElem, EvalError> {
    Ok(QuadElem::sqrt_of(&(x / y))?)
}

fn all_positive(a: &Args, names: &[&str]) -> Checks {
    let mut k = Checks::default();
    for n in names {
        k.at_least(n, &a.rat(n), 1);
    }
    k
}

// ---- Bessel-type ---------------------------------------------------------

fn lehmer_scaled_stream(a: Rational, b: Rational, u: Rational, v: Rational) -> RegularCF {
    stream(move |n| match n {
        0 => Rational::zero(),
        n if n % 2 == 1 => &u * ap(&a, &b, n),
        n => &v * ap(&a, &b, n),
    })
}

/// `sqrt(v/u) I_{a/b}(z) / I_{a/b-1}(z)` with `z = 2/(b sqrt(uv))`.
fn lehmer_scaled_closed(a: &Rational, b: &Rational, u: &Rational, v: &Rational) -> Result<Real, EvalError> {
    let uv = u * v;
    let z = SurdArg::over_sqrt(r(2) / b, uv.to_integer())?;
    let p = BesselRatioParams::new(a / b, z).with_scale(sqrt_ratio(v, u)?);
    Ok(bessel_type_real(&p)?)
}

pub(super) const LEHMER_AP: FamilySpec = FamilySpec::new(
    "lehmer_ap",
    "[0; a, a+b, a+2b, ...] = I_{a/b}(2/b) / I_{a/b-1}(2/b)",
    &[int("a", 1, 10), int("b", 1, 10)],
    |a| all_positive(a, &["a", "b"]).done(),
    |a| Ok(lehmer_scaled_stream(a.rat("a"), a.rat("b"), r(1), r(1))),
    |a| lehmer_scaled_closed(&a.rat("a"), &a.rat("b"), &r(1), &r(1)),
);

const SCALED_PARAMS: &[ParamSpec] = &[int("a", 1, 10), int("b", 1, 10), int("u", 1, 10), int("v", 1, 10)];

pub(super) const LEHMER_AP_SCALED: FamilySpec = FamilySpec::new(
    "lehmer_ap_scaled",
    "[0; ua, v(a+b), u(a+2b), v(a+3b), ...] = sqrt(v/u) I_{a/b}(z) / I_{a/b-1}(z) with z = 2/(b sqrt(uv))",
    SCALED_PARAMS,
    |a| all_positive(a, &["a", "b", "u", "v"]).done(),
    |a| Ok(lehmer_scaled_stream(a.rat("a"), a.rat("b"), a.rat("u"), a.rat("v"))),
    |a| lehmer_scaled_closed(&a.rat("a"), &a.rat("b"), &a.rat("u"), &a.rat("v")),
);

fn interlaced_validate(a: &Args) -> Vec<Violation> {
    let mut k = all_positive(a, &["a", "b", "c", "d"]);
    let (aa, b, c, d) = (a.rat("a"), a.rat("b"), a.rat("c"), a.rat("d"));
    k.equal("2bc = d(2a+b)", &(r(2) * &b * &c), &(&d * (r(2) * &aa + &b)));
    k.done()
}

pub(super) const LEHMER_INTERLACED: FamilySpec = FamilySpec::new(
    "lehmer_interlaced",
    "[0; a, c, a+b, c+d, a+2b, c+2d, ...] = sqrt(d/b) I_{2a/b}(z) / I_{2a/b-1}(z) with z = 4/sqrt(bd), when 2bc = d(2a+b)",
    &[int("a", 1, 10), int("b", 1, 10), int("c", 1, 10), int("d", 1, 10)],
    interlaced_validate,
    |a| {
        let (aa, b, c, d) = (a.rat("a"), a.rat("b"), a.rat("c"), a.rat("d"));
        Ok(stream(move |n| match n {
            0 => Rational::zero(),
            n if n % 2 == 1 => ap(&aa, &b, n.div_ceil(2)),
            n => ap(&c, &d, n / 2),
        }))
    },
    |a| {
        let (aa, b, d) = (a.rat("a"), a.rat("b"), a.rat("d"));
        let z = SurdArg::over_sqrt(r(4), (&b * &d).to_integer())?;
        let p = BesselRatioParams::new(r(2) * aa / &b, z).with_scale(sqrt_ratio(&d, &b)?);
        Ok(bessel_type_real(&p)?)
    },
);

// ---- tan, tanh, exp ------------------------------------------------------

/// `[0; u, s 3v, 5u, s 7v, ...]` with `s = -1` for tan and `+1` for tanh.
fn odd_stream(u: Rational, v: Rational, alternating: bool) -> RegularCF {
    stream(move |n| {
        let odd = r(2 * n as i64 - 1);
        match n {
            0 => Rational::zero(),
            n if n % 2 == 1 => &u * odd,
            _ if alternating => -(&v * odd),
            _ => &v * odd,
        }
    })
}

/// `sqrt(v/u) f(1/sqrt(uv))`.
fn trig_closed(f: ElementaryFn, u: &Rational, v: &Rational) -> Result<Real, EvalError> {
    let uv = u * v;
    let arg = SurdArg::over_sqrt(r(1), uv.to_integer())?;
    Ok(elementary_scaled(f, &arg, &sqrt_ratio(v, u)?)?)
}

const UV_PARAMS: &[ParamSpec] = &[int("u", 1, 10), int("v", 1, 10)];

pub(super) const TAN_UV: FamilySpec = FamilySpec::new(
    "tan_uv",
    "[0; u, -3v, 5u, -7v, ...] = sqrt(v/u) tan(1/sqrt(uv))",
    UV_PARAMS,
    |a| all_positive(a, &["u", "v"]).done(),
    |a| Ok(regularize(&odd_stream(a.rat("u"), a.rat("v"), true))),
    |a| trig_closed(ElementaryFn::Tan, &a.rat("u"), &a.rat("v")),
);

pub(super) const TANH_UV: FamilySpec = FamilySpec::new(
    "tanh_uv",
    "[0; u, 3v, 5u, 7v, ...] = sqrt(v/u) tanh(1/sqrt(uv))",
    UV_PARAMS,
    |a| all_positive(a, &["u", "v"]).done(),
    |a| Ok(odd_stream(a.rat("u"), a.rat("v"), false)),
    |a| trig_closed(ElementaryFn::Tanh, &a.rat("u"), &a.rat("v")),
);

/// Period `(4n+1)u, 2v, -(4n+3)u, -2v` for `n = 0, 1, ...`.
fn exp_stream(u: Rational, v: Rational) -> RegularCF {
    stream(move |n| {
        if n == 0 {
            return Rational::zero();
        }
        let j = n - 1;
        let k = r(4 * (j / 4) as i64);
        match j % 4 {
            0 => (k + r(1)) * &u,
            1 => r(2) * &v,
            2 => -(k + r(3)) * &u,
            _ => r(-2) * &v,
        }
    })
}

/// `v (1 - exp(-1/(uv)))`.
fn exp_closed(u: &Rational, v: &Rational) -> Result<Real, EvalError> {
    let e = elementary_real(ElementaryFn::Exp, &SurdArg::rational(-(u * v).recip()))?;
    Ok(e.neg().add_rational(&r(1)).mul_rational(v))
}

pub(super) const EXP_M: FamilySpec = FamilySpec::new(
    "exp_m",
    "[0; (4n+1)m, 2m, -(4n+3)m, -2m]_{n>=0} = m(1 - exp(-1/m^2))",
    &[int("m", 1, 10)],
    |a| all_positive(a, &["m"]).done(),
    |a| Ok(regularize(&exp_stream(a.rat("m"), a.rat("m")))),
    |a| exp_closed(&a.rat("m"), &a.rat("m")),
);

pub(super) const EXP_UV: FamilySpec = FamilySpec::new(
    "exp_uv",
    "[0; (4n+1)u, 2v, -(4n+3)u, -2v]_{n>=0} = v(1 - exp(-1/(uv)))",
    UV_PARAMS,
    |a| all_positive(a, &["u", "v"]).done(),
    |a| Ok(regularize(&exp_stream(a.rat("u"), a.rat("v")))),
    |a| exp_closed(&a.rat("u"), &a.rat("v")),
);

pub(super) const EXP_4N2S: FamilySpec = FamilySpec::new(
    "exp_4n2s",
    "[0; 2s, 6s, 10s, ...] = (exp(1/s) - 1)/(exp(1/s) + 1)",
    &[int("s", 1, 10)],
    |a| all_positive(a, &["s"]).done(),
    |a| {
        let s = a.rat("s");
        Ok(stream(move |n| if n == 0 { Rational::zero() } else { r(4 * n as i64 - 2) * &s }))
    },
    |a| {
        let e = elementary_real(ElementaryFn::Exp, &SurdArg::rational(a.rat("s").recip()))?;
        Ok(e.add_rational(&r(-1)).div(&e.add_rational(&r(1)))?)
    },
);

// ---- lifted Hurwitzian families -----------------------------------------

/// `u p^2`, the substitution that makes the first quotient divisible by `p^2`.
fn up2(a: &Args) -> Rational {
    let p = a.rat("p");
    a.rat("u") * &p * &p
}

fn lifted(a: &Args, base: RegularCF) -> Result<RegularCF, EvalError> {
    let p: BigInt = a.int("p");
    Ok(regularize(&corfl_lift(&p, &base)?))
}

fn plus_inverse_p(a: &Args, v: Real) -> Real {
    v.add_rational(&a.rat("p").recip())
}

fn hp_validate(a: &Args, names: &[&str]) -> Vec<Violation> {
    let mut k = all_positive(a, names);
    k.at_least("p", &a.rat("p"), 2);
    k.done()
}

pub(super) const HP_LEHMER: FamilySpec = FamilySpec::new(
    "hp_lehmer",
    "lift by p of [0; u p^2 a, v(a+b), u p^2 (a+2b), ...] = 1/p + (1/p) sqrt(v/u) I_{a/b}(z) / I_{a/b-1}(z) with z = 2/(bp sqrt(uv))",
    &[int("a", 1, 10), int("b", 1, 10), int("u", 1, 10), int("v", 1, 10), int("p", 2, 10)],
    |a| hp_validate(a, &["a", "b", "u", "v"]),
    |a| lifted(a, lehmer_scaled_stream(a.rat("a"), a.rat("b"), up2(a), a.rat("v"))),
    |a| Ok(plus_inverse_p(a, lehmer_scaled_closed(&a.rat("a"), &a.rat("b"), &up2(a), &a.rat("v"))?)),
);

const HP_UV_PARAMS: &[ParamSpec] = &[int("u", 1, 10), int("v", 1, 10), int("p", 2, 10)];

pub(super) const HP_TAN: FamilySpec = FamilySpec::new(
    "hp_tan",
    "lift by p of [0; u p^2, -3v, 5u p^2, -7v, ...] = 1/p + (1/p) sqrt(v/u) tan(1/(p sqrt(uv)))",
    HP_UV_PARAMS,
    |a| hp_validate(a, &["u", "v"]),
    |a| lifted(a, odd_stream(up2(a), a.rat("v"), true)),
    |a| Ok(plus_inverse_p(a, trig_closed(ElementaryFn::Tan, &up2(a), &a.rat("v"))?)),
);

pub(super) const HP_TANH: FamilySpec = FamilySpec::new(
    "hp_tanh",
    "lift by p of [0; u p^2, 3v, 5u p^2, 7v, ...] = 1/p + (1/p) sqrt(v/u) tanh(1/(p sqrt(uv)))",
    HP_UV_PARAMS,
    |a| hp_validate(a, &["u", "v"]),
    |a| lifted(a, odd_stream(up2(a), a.rat("v"), false)),
    |a| Ok(plus_inverse_p(a, trig_closed(ElementaryFn::Tanh, &up2(a), &a.rat("v"))?)),
);

pub(super) const HP_EXP: FamilySpec = FamilySpec::new(
    "hp_exp",
    "lift by p of [0; (4n+1)u p^2, 2v, -(4n+3)u p^2, -2v]_{n>=0} = 1/p + v(1 - exp(-1/(u p^2 v)))",
    HP_UV_PARAMS,
    |a| hp_validate(a, &["u", "v"]),
    |a| lifted(a, exp_stream(up2(a), a.rat("v"))),
    |a| Ok(plus_inverse_p(a, exp_closed(&up2(a), &a.rat("v"))?)),
);
