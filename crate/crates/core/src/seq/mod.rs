//! Sequence representations and exact term generation.

mod cfinite;
mod holonomic;
mod polyseq;
pub mod special;
mod term_vector;
mod xrecursive;
mod zero_divisor;

pub use cfinite::{berlekamp_massey, CFiniteSeq};
pub use holonomic::{failures as holonomic_failures, normalize_operator, residual as holonomic_residual, HolonomicSeq};
pub use polyseq::PolySeq;
pub use term_vector::TermVector;
pub use xrecursive::XRecursiveSeq;
pub use zero_divisor::{
    cfinite_is_zero_divisor, CFiniteRing, ZeroDivisorTag, ZeroDivisorVerdict, ZeroPattern,
    DEFAULT_MAX_PERIOD, DEFAULT_SCAN,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("leading coefficient vanishes at n = {0}")]
    LeadingCoefficientVanishes(usize),
    #[error("division by zero in recurrence at n = {0}")]
    DivisionByZeroInRecurrence(usize),
    #[error("invalid sequence: {0}")]
    Invalid(String),
}

/// Renders `k·a(n-i)` style terms of a recurrence. `coeffs[i]` multiplies
/// `a(n-i)`; zero coefficients are skipped.
pub(crate) fn render_linear_terms(coeffs: &[String], negatives: &[bool]) -> String {
    let mut out = String::new();
    for (i, (c, neg)) in coeffs.iter().zip(negatives).enumerate() {
        if c.is_empty() {
            continue;
        }
        let shift = match i {
            0 => "a(n)".to_string(),
            _ => format!("a(n-{i})"),
        };
        let body = if c == "1" { shift } else { format!("{c}{shift}") };
        if out.is_empty() {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
