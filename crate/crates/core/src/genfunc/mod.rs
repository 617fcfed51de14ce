//! Generating-function translations: rational generating functions,
//! recurrence/ODE conversion, products of D-finite series and the
//! first-order X-recursive functional-differential equation.
//!
//! Every returned object is checked against a truncated series expansion
//! before it is handed back.

mod algebraic;
mod funceq;
mod ode;
mod rational;

pub use algebraic::{AlgebraicField, AlgebraicScalar};
pub use funceq::{verify_series_relation, xrecursive_first_order_funceq, RelationTerm, ScaledDiffRelation};
pub use ode::{dfinite_multiply, dfinite_multiply_seqs, holonomic_rec_to_ode, ode_to_rec, DfiniteProduct, OdeOperator};
pub use rational::{cfinite_gf, cfinite_gf_parts, polyseq_gf};

use crate::seq::SeqError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenfuncError {
    #[error("all candidate operator coefficients vanish")]
    DegenerateOperator,
    #[error("unsupported coefficient shape: {0}")]
    UnsupportedCoefficientShape(String),
    #[error("series verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Default truncation order for series checks of an object with the given
/// bound.
pub fn verification_order(bound: usize) -> usize {
    (2 * bound + 10).max(25)
}

/// Coefficients of the product of two truncated series.
///
/// Both inputs are scaled to integers first so that each coefficient needs
/// only one normalization.
pub(crate) fn convolve(a: &[crate::arith::Rational], b: &[crate::arith::Rational]) -> Vec<crate::arith::Rational> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let n = a.len().min(b.len());
    let lift = crate::arith::lift_to_integers;
    let ((da, ia), (db, ib)) = (lift(&a[..n]), lift(&b[..n]));
    let den = da * db;
    (0..n)
        .map(|k| {
            let num = (0..=k).fold(BigInt::zero(), |acc, i| acc + &ia[i] * &ib[k - i]);
            crate::arith::Rational::new(num, den.clone())
        })
        .collect()
}
