use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{eval_finite, CfError, QuotientSource, RegularCF};

/// A streamed output quotient is released once this many later outputs exist.
///
/// Rewrites only ever touch the last few output positions for the streams the
/// catalog produces; a rewrite reaching an already released position is
/// reported as [`CfError::MarginExceeded`] instead of being hidden.
pub const REGULARIZE_MARGIN: usize = 4;

/// Left-to-right rewriting with the two rules
/// `[m, n, 0, p, α] = [m, n + p, α]` and `[m, -n, α] = [m - 1, 1, n - 1, -α]`.
///
/// The sign flip of `-α` is kept as a flag applied to later inputs.
#[derive(Debug, Default)]
struct Regularizer {
    out: Vec<BigInt>,
    pending_zero: bool,
    negate: bool,
    rewrites: usize,
    consumed: usize,
}

impl Regularizer {
    fn feed(&mut self, x: BigInt) -> Result<(), CfError> {
        self.consumed += 1;
        let v = if self.negate { -x } else { x };
        self.push(v);
        if self.rewrites > 10 * self.consumed {
            return Err(CfError::RewriteCycle { rewrites: self.rewrites, length: self.consumed });
        }
        Ok(())
    }

    fn push(&mut self, v: BigInt) {
        if self.out.is_empty() {
            self.out.push(v);
            return;
        }
        if self.pending_zero {
            self.pending_zero = false;
            self.rewrites += 1;
            let n = self.out.pop().expect("non-empty");
            self.push(n + v);
            return;
        }
        if v.is_positive() {
            self.out.push(v);
        } else if v.is_zero() {
            self.pending_zero = true;
        } else {
            self.rewrites += 1;
            let m = self.out.pop().expect("non-empty");
            self.negate = !self.negate;
            self.push(m - 1);
            self.push(BigInt::one());
            self.push(-v - 1);
        }
    }

    /// Closes a finite input: a trailing zero cancels the quotient before it,
    /// and a trailing 1 is folded so the result is canonical.
    fn finish(mut self) -> Result<Vec<BigInt>, CfError> {
        if self.pending_zero {
            self.out.pop();
            if self.out.is_empty() {
                return Err(CfError::Undefined);
            }
        }
        if self.out.len() >= 2 && self.out.last().is_some_and(|a| a.is_one()) {
            self.out.pop();
            *self.out.last_mut().expect("non-empty") += 1;
        }
        Ok(self.out)
    }
}

/// Canonical form of a finite signed expansion, with the exact value checked.
pub fn regularize_finite(quotients: &[BigInt]) -> Result<Vec<BigInt>, CfError> {
    let before = eval_finite(quotients)?;
    let mut reg = Regularizer::default();
    for q in quotients {
        reg.feed(q.clone())?;
    }
    let out = reg.finish()?;
    let after = eval_finite(&out)?;
    if after != before {
        return Err(CfError::ValueChanged { before: before.to_string(), after: after.to_string() });
    }
    Ok(out)
}

/// Lazily regularized view of a signed stream.
///
/// Finite inputs are checked exactly against the input value when the stream
/// ends; infinite inputs release quotients with a lag of
/// [`REGULARIZE_MARGIN`].
pub fn regularize(cf: &RegularCF) -> RegularCF {
    RegularCF::from_source(Arc::new(RegularizedSource { input: cf.clone(), state: Mutex::new(StreamState::default()) }))
}

#[derive(Default)]
struct StreamState {
    reg: Regularizer,
    raw: Vec<BigInt>,
    emitted: Vec<BigInt>,
    finished: Option<Result<Vec<BigInt>, CfError>>,
}

struct RegularizedSource {
    input: RegularCF,
    state: Mutex<StreamState>,
}

impl QuotientSource for RegularizedSource {
    fn quotient(&self, index: usize) -> Result<Option<BigInt>, CfError> {
        let mut st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(q) = st.emitted.get(index) {
            return Ok(Some(q.clone()));
        }
        loop {
            if let Some(done) = &st.finished {
                let out = done.clone()?;
                if out.len() < st.emitted.len() || out[..st.emitted.len()] != st.emitted[..] {
                    return Err(CfError::MarginExceeded { index: st.emitted.len() });
                }
                return Ok(out.get(index).cloned());
            }
            if st.reg.out.len() > index + REGULARIZE_MARGIN {
                while st.emitted.len() <= index {
                    let next = st.reg.out[st.emitted.len()].clone();
                    st.emitted.push(next);
                }
                return Ok(Some(st.emitted[index].clone()));
            }
            match self.input.quotient(st.raw.len())? {
                Some(x) => {
                    st.raw.push(x.clone());
                    st.reg.feed(x)?;
                    let emitted = st.emitted.len();
                    if st.reg.out.len() < emitted || st.reg.out[..emitted] != st.emitted[..] {
                        return Err(CfError::MarginExceeded { index: emitted.min(st.reg.out.len()) });
                    }
                }
                None => {
                    let reg = std::mem::take(&mut st.reg);
                    let result = reg.finish().and_then(|out| {
                        let before = eval_finite(&st.raw)?;
                        let after = eval_finite(&out)?;
                        if before != after {
                            return Err(CfError::ValueChanged { before: before.to_string(), after: after.to_string() });
                        }
                        Ok(out)
                    });
                    st.finished = Some(result);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn displayed_rules() {
        assert_eq!(regularize_finite(&b(&[1, 2, 0, 3])).unwrap(), b(&[1, 5]));
        assert_eq!(regularize_finite(&b(&[3, -2])).unwrap(), b(&[2, 2]));
        assert_eq!(regularize_finite(&b(&[1, 2, 3])).unwrap(), b(&[1, 2, 3]));
    }

    #[test]
    fn zero_head_negative_first() {
        // 0 + 1/(-3) = -1/3 = [-1; 1, 2]
        assert_eq!(regularize_finite(&b(&[0, -3])).unwrap(), b(&[-1, 1, 2]));
    }

    #[test]
    fn lazy_matches_finite() {
        let raw = b(&[0, 2, -3, 4, 0, 5, -1, 7]);
        let lazy = regularize(&RegularCF::from_quotients(raw.clone()));
        assert_eq!(lazy.prefix(20).unwrap(), regularize_finite(&raw).unwrap());
    }

    #[test]
    fn lazy_infinite_stream() {
        // [0; 2, -2, 2, -2, ...] alternating signs
        let cf = RegularCF::from_fn(|i| {
            Some(BigInt::from(if i == 0 {
                0
            } else if i % 2 == 1 {
                3
            } else {
                -3
            }))
        });
        let r = regularize(&cf);
        let p = r.prefix(10).unwrap();
        assert!(p[1..].iter().all(|q| q.is_positive()));
    }

    #[test]
    fn undefined_input() {
        assert_eq!(regularize_finite(&b(&[1, 0])), Err(CfError::Undefined));
    }
}
