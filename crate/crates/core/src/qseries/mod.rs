//! Certified evaluation of the series that appear on the right-hand sides of
//! the catalog identities.
//!
//! Partial sums are formed exactly (rationals, or a single quadratic field)
//! and converted to an interval once, widened by a geometric tail bound.

mod bessel;
mod elementary;
mod finite;
mod series;
mod tasoev;

pub use bessel::{bessel_type_ratio, bessel_type_real, BesselRatioParams};
pub use elementary::{elementary_interval, elementary_real, elementary_scaled, ElementaryFn};
pub use finite::{finap2_closed, finite_ap_closed, Finap2Error};
pub use series::TERM_CAP;
pub use tasoev::{
    h1_gcf, h1_ratio, h1_real, q_pochhammer, tas2_closed, tasoev_real, tasoev_sum, ShiftLaw, TasoevSumParams,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::numerics::{NumericsError, QuadElem, Rational};

/// A real number of the form `coeff * sqrt(radicand)` with `radicand >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdArg {
    pub coeff: Rational,
    pub radicand: BigInt,
}

impl SurdArg {
    pub fn rational(r: Rational) -> Self {
        SurdArg { coeff: r, radicand: BigInt::from(1) }
    }

    /// `num / sqrt(radicand)`, stored as `num/radicand * sqrt(radicand)`.
    pub fn over_sqrt(num: Rational, radicand: BigInt) -> Result<Self, NumericsError> {
        if !radicand.is_positive() {
            return Err(NumericsError::NegativeRadicand(radicand.to_string()));
        }
        let coeff = num / Rational::from_integer(radicand.clone());
        Ok(SurdArg { coeff, radicand })
    }

    pub fn new(coeff: Rational, radicand: BigInt) -> Result<Self, NumericsError> {
        if !radicand.is_positive() {
            return Err(NumericsError::NegativeRadicand(radicand.to_string()));
        }
        Ok(SurdArg { coeff, radicand })
    }

    /// The square of the argument, always rational.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_quad(&self) -> QuadElem {
        QuadElem::new(Rational::zero(), self.coeff.clone(), self.radicand.clone())
            .expect("radicand checked positive on construction")
    }
}

impl fmt::Display for SurdArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_quad())
    }
}
