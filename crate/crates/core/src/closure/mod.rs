//! Closure constructions. Every result is checked against a termwise
//! oracle built directly from the inputs before it is returned, so a
//! construction bug surfaces as an error instead of a wrong recurrence.

mod cfinite;
mod holonomic;
mod xrecursive;

pub use cfinite::{cfinite_add, cfinite_mul, cfinite_multisection, cfinite_partial_sum};
pub use holonomic::{holonomic_add, holonomic_cauchy, holonomic_cauchy_from, holonomic_hadamard, holonomic_partial_sum};
pub use xrecursive::{
    xrecursive_add, xrecursive_hadamard, xrecursive_partial_sum, XRecOptions,
};

use crate::seq::{CFiniteSeq, SeqError, ZeroDivisorVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport<T> {
    pub result: T,
    /// The order bound the construction guarantees.
    pub claimed_order_bound: usize,
    /// Number of consecutive oracle terms the result was checked against.
    pub verified_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("elimination stopped at row {row}, column {col}: every candidate pivot is a zero divisor, e.g. {pivot:?} ({verdict})")]
    ZeroDivisorPivot {
        row: usize,
        col: usize,
        pivot: CFiniteSeq,
        verdict: ZeroDivisorVerdict,
    },
    #[error("elimination stopped at row {row}, column {col}: could not decide whether {pivot:?} is a zero divisor ({verdict})")]
    UnknownPivot {
        row: usize,
        col: usize,
        pivot: CFiniteSeq,
        verdict: ZeroDivisorVerdict,
    },
    #[error("no linear dependency found within the order bound")]
    DependencyNotFound,
    #[error("result failed oracle verification: {0}")]
    VerificationFailed(String),
    #[error("{0}")]
    Genfunc(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Terms needed to verify a result of the given bound.
pub(crate) fn verification_length(bound: usize) -> usize {
    2 * bound + 4
}
