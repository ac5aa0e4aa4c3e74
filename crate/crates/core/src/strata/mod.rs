//! Combinatorics of the blowup strata.
//!
//! A stratum `(I_P, {I_k})` records which marked points sit on the genus-one
//! principal component and how the rest are grouped on rational bubbles
//! attached directly to it. The index set `A_1(I,J)` keeps the strata whose
//! every bubble carries a point of `I`. Blowups happen in an order extending
//! the partial order `≺`, where `a ≺ b` means `a` is more degenerate.
//!
//! Everything is brute force over set partitions; universes of up to eight
//! labels enumerate instantly.

mod label;
mod maps;
mod order;
mod partition;

pub use label::{Kind, Label, LabelId, LabelSet};
pub use maps::{eta, fiber, forget_stratum, mu, sentinel_fiber_count, Fiber};
pub use order::{linear_extension, precedes, LinearExtension};
pub use partition::{enumerate_a1, enumerate_a1_ij, RootedPartition};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("invalid stratum: {0}")]
    InvalidPartition(String),
    #[error("strata over different marked-point sets")]
    MismatchedUniverse,
    #[error("constraints contradict the partial order (cycle through {0})")]
    Cycle(String),
    #[error("constraint mentions a stratum outside the set: {0}")]
    UnknownStratum(String),
    #[error("label {0} is missing")]
    MissingLabel(Label),
    #[error("label {0} is already present")]
    LabelClash(Label),
    #[error("label {label} must be {expected:?}-type")]
    WrongKind { label: Label, expected: Kind },
    #[error("{0} and {1} do not lie on a common component")]
    NotTogether(Label, Label),
    #[error("the stratum is the pair stratum of {0} and {1} itself")]
    PairStratum(Label, Label),
    #[error("bubble {{{0}, {1}}} carries no I-point; not a stratum of A_1(I,J)")]
    BubbleWithoutI(Label, Label),
    #[error("the no-bubble stratum is not allowed here")]
    Sentinel,
}
