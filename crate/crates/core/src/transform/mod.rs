//! Contractions, the `1/p` lift, the convergence guard and exact
//! matrix-word identities.

mod contraction;
mod lift;
mod matrix;
mod worpitzky;

pub use contraction::{doubling_embed, even_part, odd_part, odd_part_doubled};
pub use lift::{corfl_lift, iterated_lift, lift_offset, LIFT_GUARD_WINDOW};
pub use matrix::{
    builtin_identities, matrix_word_check, parse_identities, CheckOutcome, Factor, Mat2, MatrixError, MatrixIdentity,
    MatrixWord, SymbolDecl,
};
pub use worpitzky::{unit_denominator_form, worpitzky_check, worpitzky_check_range, WorpitzkyResult};
