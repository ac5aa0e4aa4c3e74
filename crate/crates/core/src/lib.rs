//! Exact intersection numbers of tautological classes on moduli spaces of
//! genus-one curves and on their blowups `M~_{1,(I,J)}`.
//!
//! The crate has four parts:
//!
//! - [`brackets`]: memoized evaluation of the numbers `<c~; (c_j)>_{(|I|,|J|)}`
//!   with exact rational arithmetic.
//! - [`strata`]: the combinatorics of the blowup index sets `A_1(I,J)`, their
//!   partial order and the structural maps between them.
//! - [`oracle`]: verification suites that check the evaluator and the strata
//!   model against closed forms and brute force.
//! - [`cli`] and [`cache`]: the command-line front end and its JSON-lines
//!   result cache.

pub mod brackets;
pub mod cache;
pub mod cli;
pub mod oracle;
pub mod strata;

/// Arbitrary-precision exact fraction, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;
