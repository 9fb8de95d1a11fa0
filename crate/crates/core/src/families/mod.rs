//! Catalog of continued-fraction families with known closed forms.
//!
//! Each entry binds a parameter schema and its hypotheses to two independent
//! computations: the partial quotients of the expansion and a certified
//! evaluation of the closed form.

mod finite;
mod grid;
mod hurwitz;
mod params;
mod tasoev;

pub use grid::{default_grid, grid_for};
pub use params::{GridDomain, ParamKind, ParamParseError, ParamSet, ParamSpec, ParamValue, Violation};

use num_bigint::BigInt;
use serde_json::json;

use crate::cf::{CfError, RegularCF};
use crate::numerics::{IntervalReal, NumericsError, Real};
use crate::qseries::Finap2Error;

use params::{check_schema, normalize, Args};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Finite(#[from] Finap2Error),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    Unknown(String),
    #[error("invalid parameters for {family}: {}", join_violations(.violations))]
    Invalid { family: String, violations: Vec<Violation> },
    #[error("{family}: {source}")]
    Eval { family: String, source: EvalError },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

type Validate = fn(&Args) -> Vec<Violation>;
type Expand = fn(&Args) -> Result<RegularCF, EvalError>;
type Closed = fn(&Args) -> Result<Real, EvalError>;

pub struct FamilySpec {
    pub id: &'static str,
    /// The identity in plain text, left side first.
    pub identity: &'static str,
    pub params: &'static [ParamSpec],
    /// Finite expansions compare exactly.
    pub finite: bool,
    validate: Validate,
    expand: Expand,
    closed: Closed,
}

impl std::fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FamilySpec").field("id", &self.id).finish_non_exhaustive()
    }
}

impl FamilySpec {
    pub(crate) const fn new(
        id: &'static str,
        identity: &'static str,
        params: &'static [ParamSpec],
        validate: Validate,
        expand: Expand,
        closed: Closed,
    ) -> Self {
        FamilySpec { id, identity, params, finite: false, validate, expand, closed }
    }

    pub(crate) const fn finite(mut self) -> Self {
        self.finite = true;
        self
    }

    pub fn validate(&self, p: &ParamSet) -> Result<(), Vec<Violation>> {
        let p = normalize(self.params, p);
        let schema = check_schema(self.params, &p);
        if !schema.is_empty() {
            return Err(schema);
        }
        let v = (self.validate)(&Args(&p));
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    fn checked(&self, p: &ParamSet) -> Result<ParamSet, FamilyError> {
        self.validate(p).map_err(|violations| FamilyError::Invalid { family: self.id.to_string(), violations })?;
        Ok(normalize(self.params, p))
    }

    fn eval_err(&self) -> impl Fn(EvalError) -> FamilyError + '_ {
        move |source| FamilyError::Eval { family: self.id.to_string(), source }
    }

    /// The full expansion, head included, as a regular continued fraction.
    pub fn expansion(&self, p: &ParamSet) -> Result<RegularCF, FamilyError> {
        let p = self.checked(p)?;
        (self.expand)(&Args(&p)).map_err(self.eval_err())
    }

    /// The first `n` partial quotients after the head (fewer for finite
    /// expansions).
    pub fn quotients(&self, p: &ParamSet, n: usize) -> Result<Vec<BigInt>, FamilyError> {
        let cf = self.expansion(p)?;
        let mut all = cf.prefix(n).map_err(|e| self.eval_err()(e.into()))?;
        all.remove(0);
        Ok(all)
    }

    pub fn closed_form_real(&self, p: &ParamSet) -> Result<Real, FamilyError> {
        let p = self.checked(p)?;
        (self.closed)(&Args(&p)).map_err(self.eval_err())
    }

    pub fn closed_form(&self, p: &ParamSet, digits: u32) -> Result<IntervalReal, FamilyError> {
        self.closed_form_real(p)?.enclose(digits).map_err(|e| self.eval_err()(e.into()))
    }

    pub fn format_params(&self, p: &ParamSet) -> String {
        p.format_with(self.params)
    }
}

static CATALOG: &[FamilySpec] = &[
    tasoev::TAS1,
    tasoev::TAS2,
    tasoev::TAS2_NEG_I,
    tasoev::TAS2_NEG_II,
    tasoev::TAS3,
    tasoev::APINTER2_EVEN,
    tasoev::APINTER2_ODD,
    tasoev::APINTER,
    tasoev::FIB_PREFIX,
    tasoev::T1EX,
    tasoev::T3EX,
    hurwitz::LEHMER_AP,
    hurwitz::LEHMER_AP_SCALED,
    hurwitz::LEHMER_INTERLACED,
    hurwitz::TAN_UV,
    hurwitz::TANH_UV,
    hurwitz::EXP_M,
    hurwitz::EXP_UV,
    hurwitz::EXP_4N2S,
    hurwitz::HP_LEHMER,
    hurwitz::HP_TAN,
    hurwitz::HP_TANH,
    hurwitz::HP_EXP,
    tasoev::LONG24,
    finite::FIN_AP,
    finite::FIN_INTERLACED,
];

pub fn catalog() -> &'static [FamilySpec] {
    CATALOG
}

pub fn catalog_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|f| f.id).collect()
}

pub fn family(id: &str) -> Result<&'static FamilySpec, FamilyError> {
    CATALOG.iter().find(|f| f.id == id).ok_or_else(|| FamilyError::Unknown(id.to_string()))
}

pub fn validate_params(id: &str, p: &ParamSet) -> Result<Result<(), Vec<Violation>>, FamilyError> {
    Ok(family(id)?.validate(p))
}

pub fn quotients(id: &str, p: &ParamSet, n: usize) -> Result<Vec<BigInt>, FamilyError> {
    family(id)?.quotients(p, n)
}

pub fn closed_form(id: &str, p: &ParamSet, digits: u32) -> Result<IntervalReal, FamilyError> {
    family(id)?.closed_form(p, digits)
}

/// Machine-readable description of every family and its parameters.
pub fn catalog_json() -> serde_json::Value {
    let families: Vec<serde_json::Value> = CATALOG
        .iter()
        .map(|f| {
            let params: Vec<serde_json::Value> =
                f.params.iter().map(|s| json!({ "name": s.name, "kind": s.kind })).collect();
            json!({ "id": f.id, "identity": f.identity, "finite": f.finite, "params": params })
        })
        .collect();
    json!({ "families": families })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::certified_value_budget;

    #[test]
    fn every_grid_point_agrees() {
        for f in catalog() {
            let grid = grid_for(f);
            assert!(grid.len() >= 3, "{}: grid {:?}", f.id, grid);
            for p in grid {
                let cf = f.expansion(&p).unwrap();
                let closed = f.closed_form(&p, 30).unwrap_or_else(|e| panic!("{} {p}: {e}", f.id));
                let got = certified_value_budget(&cf, 30, 4000).unwrap_or_else(|e| panic!("{} {p}: {e}", f.id));
                assert!(got.enclosure.overlaps(&closed), "{} {p}: cf {:?} closed {:?}", f.id, got.enclosure, closed);
            }
        }
    }
}
