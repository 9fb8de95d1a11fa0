//! Exact rational and quadratic-field arithmetic plus directed-rounding
//! interval reals.

mod dyadic;
mod interval;
mod quad;
mod rational;
mod real;
mod scalar;
mod squarefree;

pub use dyadic::{Dyadic, Rounding};
pub(crate) use interval::decimal_string;
pub use interval::IntervalReal;
pub use quad::{quad_arith, quad_to_interval, QuadElem, QuadOp};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use real::{digits_to_bits, interval_refine, Real, GUARD_DIGITS, MAX_ESCALATIONS};
pub use scalar::Scalar;
pub use squarefree::square_free_decompose;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericsError {
    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) live in different fields")]
    RadicandMismatch(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}: complex values are not supported")]
    NegativeRadicand(String),
    #[error("interval divisor [{0}, {1}] contains zero")]
    DivisorContainsZero(String, String),
    #[error("precision escalation cap ({escalations} doublings) exceeded while targeting {digits} digits")]
    EscalationCap { digits: u32, escalations: u32 },
    #[error("series tail bound not reached within {0} terms")]
    TermCap(usize),
    #[error("Pochhammer factor vanishes at index {0}")]
    PochhammerZero(usize),
    #[error("invalid rational literal {0:?}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}
