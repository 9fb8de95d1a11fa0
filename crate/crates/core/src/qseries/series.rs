use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::{IntervalReal, NumericsError, Rational};

/// Maximum number of terms any series may use before giving up.
pub const TERM_CAP: usize = 10_000;

/// Exact partial sum together with a rigorous bound on the omitted tail.
pub(crate) struct Summed<T> {
    pub sum: T,
    pub tail: Rational,
}

impl<T: crate::numerics::Scalar> Summed<T> {
    pub fn enclose(&self, bits: u32) -> Result<IntervalReal, NumericsError> {
        Ok(self.sum.enclose_bits(bits + 2)?.widen(&self.tail))
    }
}

pub(crate) fn two_pow_neg(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Sums `t_0 + t_1 + ...` where `next(n, t_{n-1})` produces `t_n`.
///
/// The term recurrence must be multiplicative, so a zero term ends the
/// series. `ratio_bound(n)` must bound `|t_{k+1} / t_k|` for every `k >= n`
/// or return `None` when no such bound is available yet.
pub(crate) fn sum_series<T, N, R>(first: T, next: N, ratio_bound: R, bits: u32) -> Result<Summed<T>, NumericsError>
where
    T: crate::numerics::Scalar,
    N: Fn(usize, &T) -> Result<T, NumericsError>,
    R: Fn(usize) -> Option<Rational>,
{
    let target = two_pow_neg(bits + 1);
    let one = Rational::one();
    let mut sum = first.clone();
    let mut term = first;
    let mut n = 0usize;
    loop {
        if term.is_zero() {
            return Ok(Summed { sum, tail: Rational::zero() });
        }
        if let Some(rho) = ratio_bound(n) {
            if rho < one {
                let tail = term.magnitude_upper() * &rho / (&one - &rho);
                if tail <= target {
                    return Ok(Summed { sum, tail });
                }
            }
        }
        n += 1;
        if n >= TERM_CAP {
            return Err(NumericsError::TermCap(TERM_CAP));
        }
        term = next(n, &term)?;
        sum = sum.try_add(&term)?;
    }
}
