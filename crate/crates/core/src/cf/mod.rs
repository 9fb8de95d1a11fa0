//! Regular and generalized continued fractions.

mod expand;
mod generalized;
mod literal;
mod regular;
mod regularize;

pub use expand::{rcf_expand, ExpandedQuotient};
pub use generalized::{approximants, equivalence_transform, eval_gcf, GeneralizedCF, TermFn};
pub use literal::{format_cf_literal, format_gcf_literal, parse_cf_literal, parse_gcf_literal, CfLiteral};
pub use regular::{
    certified_value, certified_value_budget, convergents, eval_finite, CertifiedValue, Convergent, QuotientSource,
    RegularCF,
};
pub use regularize::{regularize, regularize_finite, REGULARIZE_MARGIN};

use num_bigint::BigInt;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    #[error("continued fraction has {available} partial quotients after the head, {requested} requested")]
    Exhausted { requested: usize, available: usize },
    #[error("partial quotient a_{index} = {value} is not canonical")]
    NonCanonical { index: usize, value: BigInt },
    #[error("zero denominator B_{index}")]
    ZeroDenominator { index: usize },
    #[error("regularization did not terminate: {rewrites} rewrites for {length} input quotients")]
    RewriteCycle { rewrites: usize, length: usize },
    #[error("regularization changed the value: {before} became {after}")]
    ValueChanged { before: String, after: String },
    #[error("regularization rewrote quotient {index} after it had been emitted")]
    MarginExceeded { index: usize },
    #[error("signed continued fraction has no finite value")]
    Undefined,
    #[error("zero scale factor c_{0}")]
    ZeroScale(usize),
    #[error("zero partial denominator b_{index} in contraction")]
    ZeroPartialDenominator { index: usize },
    #[error("zero sequence element c_{0}")]
    ZeroSequenceElement(usize),
    #[error("lift parameter p must be >= 2, got {0}")]
    LiftParameter(BigInt),
    #[error("lift needs head 0, got {0}")]
    LiftHead(BigInt),
    #[error("a_{index} = {value} is not divisible by p^2 = {p2}")]
    Divisibility { index: usize, value: BigInt, p2: BigInt },
    #[error("convergence guard failed: |a_{index}| = {value} > 1/4 in unit-denominator form")]
    Convergence { index: usize, value: String },
    #[error("lift stage {stage}: {source}")]
    Stage { stage: usize, source: Box<CfError> },
    #[error("enclosure width 10^-{digits} not reached within {terms} quotients")]
    Budget { digits: u32, terms: usize },
    #[error("invalid continued fraction literal {0:?}: {1}")]
    Literal(String, String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
