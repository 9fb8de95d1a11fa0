use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::CfError;
use crate::numerics::{NumericsError, Rational, Real, MAX_ESCALATIONS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpandedQuotient {
    Certified(BigInt),
    /// The enclosure kept straddling an integer after the escalation cap.
    Uncertified {
        index: usize,
    },
}

impl ExpandedQuotient {
    pub fn certified(&self) -> Option<&BigInt> {
        match self {
            ExpandedQuotient::Certified(q) => Some(q),
            ExpandedQuotient::Uncertified { .. } => None,
        }
    }
}

/// Regular continued fraction of `x`: the head and up to `max_terms` further
/// quotients.
///
/// A quotient is emitted only when the whole enclosure of the current tail
/// lies in `[a, a + 1)`. Otherwise the producer is re-run at doubled
/// precision; after the escalation cap an `Uncertified` marker ends the
/// output. Exact rationals use the Euclidean algorithm and may end early.
pub fn rcf_expand(x: &Real, max_terms: usize) -> Result<Vec<ExpandedQuotient>, CfError> {
    if let Some(r) = x.as_exact() {
        return Ok(euclid(r, max_terms).into_iter().map(ExpandedQuotient::Certified).collect());
    }
    let mut out: Vec<BigInt> = Vec::new();
    let mut bits = 64u32;
    let mut escalations = 0u32;
    while out.len() <= max_terms {
        let (lo, hi) = match x.at_bits(bits) {
            Ok(iv) => (iv.lo_rational(), iv.hi_rational()),
            Err(NumericsError::DivisorContainsZero(..)) => {
                escalations += 1;
                if escalations > MAX_ESCALATIONS {
                    break;
                }
                bits *= 2;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let before = out.len();
        let certified = simultaneous_euclid(lo, hi, max_terms + 1);
        if certified.len() < before || certified[..before] != out[..] {
            // a tighter enclosure contradicting an emitted quotient means the
            // producer is not a valid enclosure
            return Err(CfError::Numerics(NumericsError::Domain(format!(
                "refined enclosure disagrees with certified quotients at {} bits",
                bits
            ))));
        }
        out = certified;
        if out.len() > max_terms {
            break;
        }
        if out.len() > before {
            escalations = 0;
        } else {
            escalations += 1;
            if escalations > MAX_ESCALATIONS {
                let index = out.len();
                let mut res: Vec<_> = out.into_iter().map(ExpandedQuotient::Certified).collect();
                res.push(ExpandedQuotient::Uncertified { index });
                return Ok(res);
            }
        }
        bits *= 2;
    }
    Ok(out.into_iter().map(ExpandedQuotient::Certified).collect())
}

fn euclid(r: &Rational, max_terms: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    while !d.is_zero() && out.len() <= max_terms {
        let (q, rem) = n.div_mod_floor(&d);
        out.push(q);
        n = std::mem::replace(&mut d, rem);
    }
    out
}

/// Quotients shared by every number in `[lo, hi]`.
fn simultaneous_euclid(mut lo: Rational, mut hi: Rational, limit: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    while out.len() < limit {
        let a = lo.floor();
        // tail must lie in [a, a+1) and strictly above a to continue
        if hi.floor() != a || lo == a {
            break;
        }
        out.push(a.to_integer());
        let (l, h) = ((&hi - &a).recip(), (&lo - &a).recip());
        lo = l;
        hi = h;
        debug_assert!(lo.is_positive() && lo <= hi);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, IntervalReal, QuadElem};

    fn certified(v: Vec<ExpandedQuotient>) -> Vec<i64> {
        v.iter().map(|q| i64::try_from(q.certified().unwrap()).unwrap()).collect()
    }

    #[test]
    fn exact_rational_terminates() {
        assert_eq!(certified(rcf_expand(&Real::exact(rat(7, 10)), 10).unwrap()), vec![0, 1, 2, 3]);
        assert_eq!(certified(rcf_expand(&Real::exact(rat(-7, 10)), 10).unwrap()), vec![-1, 3, 3]);
    }

    #[test]
    fn golden_ratio() {
        let phi = QuadElem::new(rat(1, 2), rat(1, 2), BigInt::from(5)).unwrap();
        let q = certified(rcf_expand(&Real::from_quad(phi), 40).unwrap());
        assert_eq!(q, vec![1; 41]);
    }

    #[test]
    fn straddle_reports_uncertified() {
        // an enclosure that never decides between 1 and 0.999...
        let x = Real::from_fn(|bits| {
            let eps = Rational::new(BigInt::from(1), BigInt::from(1) << bits.min(4000) as usize);
            Ok(IntervalReal::from_bounds(&(rat(1, 1) - &eps), &(rat(1, 1) + eps), bits))
        });
        let q = rcf_expand(&x, 5).unwrap();
        assert_eq!(q, vec![ExpandedQuotient::Uncertified { index: 0 }]);
    }
}
