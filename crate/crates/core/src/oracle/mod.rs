//! Verification suites.
//!
//! Every suite compares the production code against something computed a
//! different way: a closed form, a second evaluator that works on labeled
//! tuples one point at a time, or brute-force enumeration of strata. Suites
//! are deterministic given their bounds and seed.
//!
//! Each suite takes the implementation under test as a trait object so the
//! harness can be fed a deliberately broken one (see [`OffByOne`] and
//! [`BrokenFiber`]) to make sure it actually detects failures.

mod labeled;
mod report;
mod suites;

pub use labeled::{genus0_by_string, LabeledEvaluator, Policy};
pub use report::{Failure, VerificationReport};
pub use suites::{
    random_key, verify_bases, verify_bases_with, verify_confluence, verify_confluence_with,
    verify_corollary, verify_corollary_with, verify_strata, verify_strata_with,
};

use crate::brackets::{eval_bracket, eval_genus0_psi, BracketKey, ExponentMultiset, MemoCache};
use crate::strata::{self, Fiber, Label, RootedPartition, StrataError};
use crate::Rational;

/// The bracket evaluator under test.
pub trait Evaluator: Sync {
    fn bracket(&self, key: &BracketKey) -> Rational;
    /// Genus-zero psi integrals by closed form.
    fn genus0(&self, exps: &ExponentMultiset) -> Rational;
}

/// The production evaluator backed by a shared memo table.
#[derive(Debug, Default)]
pub struct Standard {
    pub cache: MemoCache,
}

impl Evaluator for Standard {
    fn bracket(&self, key: &BracketKey) -> Rational {
        eval_bracket(key, &self.cache)
    }

    fn genus0(&self, exps: &ExponentMultiset) -> Rational {
        eval_genus0_psi(exps).expect("suites only ask for n >= 3")
    }
}

/// Adds one to every value whose key has exactly one `J`-point (and to
/// genus-zero values on four points). For harness self-checks.
pub struct OffByOne<E>(pub E);

impl<E: Evaluator> Evaluator for OffByOne<E> {
    fn bracket(&self, key: &BracketKey) -> Rational {
        let v = self.0.bracket(key);
        if key.n() == 1 {
            v + Rational::from_integer(1.into())
        } else {
            v
        }
    }

    fn genus0(&self, exps: &ExponentMultiset) -> Rational {
        let v = self.0.genus0(exps);
        if exps.len() == 4 {
            v + Rational::from_integer(1.into())
        } else {
            v
        }
    }
}

/// The strata maps under test.
pub trait StrataOps: Sync {
    fn mu(
        &self,
        rho: &RootedPartition,
        i: Label,
        j: Label,
    ) -> Result<RootedPartition, StrataError> {
        strata::mu(rho, i, j)
    }

    fn eta(
        &self,
        rho: &RootedPartition,
        j: Label,
        jstar: Label,
    ) -> Result<RootedPartition, StrataError> {
        strata::eta(rho, j, jstar)
    }

    fn forget(&self, rho: &RootedPartition, jstar: Label) -> Result<RootedPartition, StrataError> {
        strata::forget_stratum(rho, jstar)
    }

    fn fiber(&self, rho_bar: &RootedPartition, jstar: Label) -> Result<Fiber, StrataError> {
        strata::fiber(rho_bar, jstar)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct StandardStrata;

impl StrataOps for StandardStrata {}

/// Forgets to create the new `{i, j*}` bubbles. For harness self-checks.
#[derive(Debug, Default, Clone, Copy)]
pub struct BrokenFiber;

impl StrataOps for BrokenFiber {
    fn fiber(&self, rho_bar: &RootedPartition, jstar: Label) -> Result<Fiber, StrataError> {
        let mut f = strata::fiber(rho_bar, jstar)?;
        f.new_pairs.pop();
        Ok(f)
    }
}
