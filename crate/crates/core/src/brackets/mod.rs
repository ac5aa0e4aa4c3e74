//! Evaluation of the bracket numbers
//!
//! ```text
//! <c~; (c_j)_{j in J}>_{(m, n)} = < psi~^c~ * prod_j pi^* psi_j^{c_j}, M~_{1,(I,J)} >
//! ```
//!
//! with `m = |I|` and `n = |J|`. When `m = 0` the blowup is `M_{1,n}` itself
//! and `psi~` is the Hodge class `lambda`, so those keys are Hodge integrals
//! evaluated by the string and dilaton equations. For `m >= 1` the two
//! blowup recursions reduce everything to the `m = 0` case or to
//! `<psi, M_{1,1}> = 1/24`.
//!
//! All arithmetic is exact; nothing here touches floating point.

mod eval;
mod genus0;
mod key;
mod memo;

pub use eval::{
    corollary_closed_form, eval_bracket, eval_bracket_uncached, eval_genus1_hodge, eval_genus1_psi,
    string_step, transfer_step, StepTerm,
};
pub use genus0::eval_genus0_psi;
pub use key::{canonical_key, BracketKey, CanonicalKey, ExponentMultiset};
pub use memo::{MemoCache, MemoConflict};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    /// `M_{1,0}` does not exist.
    #[error("undefined moduli space: m + n = 0")]
    UndefinedModuliSpace,
    /// `M_{0,n}` needs at least three marked points.
    #[error("genus-zero moduli space needs at least 3 marked points, got {0}")]
    TooFewGenusZeroPoints(usize),
    #[error("closed form needs at least one I-point")]
    NoIPoints,
}

pub(crate) fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1u32), |acc, k| acc * k)
}

/// `<psi, M_{1,1}> = 1/24`.
pub(crate) fn one_24th() -> crate::Rational {
    crate::Rational::new(1.into(), 24.into())
}
