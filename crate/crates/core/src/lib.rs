//! Exact and certified continued-fraction engine.
//!
//! The crate is layered bottom-up:
//!
//! * [`numerics`]: exact rationals, real-quadratic field elements, dyadic
//!   interval enclosures and lazily refinable reals.
//! * [`cf`]: regular and generalized continued fractions, convergents,
//!   regularization of signed expansions and certified expansion of reals.
//! * [`transform`]: even/odd contractions, the `1/p` lift and its iteration,
//!   the Worpitzky guard and exact 2×2 matrix-word identity checking.
//! * [`qseries`]: certified evaluation of q-Pochhammer sums, Bessel-type
//!   ratios, elementary functions and finite closed forms.
//! * [`families`]: the catalog of Tasoevian and Hurwitzian families.
//! * [`verify`]: verification reports, sweeps and the expand/transform
//!   front ends used by the CLI.

pub mod cf;
pub mod expr;
pub mod families;
pub mod numerics;
pub mod qseries;
pub mod transform;
pub mod verify;
