//! Identity proofs for C-finite expressions.
//!
//! A C-finite sequence of order at most `d` that vanishes at `d+1`
//! consecutive indices is zero, so bounding the order of an expression and
//! evaluating it at `0..=d` proves it zero.

mod parse;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::seq::CFiniteSeq;

pub use parse::{parse_expr, parse_identity, Env, ParseError};

/// A tree over C-finite atoms and rational constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CFiniteExpr {
    Atom { name: String, seq: CFiniteSeq },
    Const(Rational),
    Add(Box<CFiniteExpr>, Box<CFiniteExpr>),
    Neg(Box<CFiniteExpr>),
    Mul(Box<CFiniteExpr>, Box<CFiniteExpr>),
    /// `n ↦ e(n + m)`.
    Shift(Box<CFiniteExpr>, i64),
    /// `n ↦ e(m·n + r)`.
    Multisection { expr: Box<CFiniteExpr>, m: usize, r: i64 },
    /// `n ↦ Σ_{j=0}^{n} e(j)`.
    PartialSum(Box<CFiniteExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProverError {
    #[error("cannot evaluate {0}")]
    NotEvaluable(String),
}

impl CFiniteExpr {
    pub fn atom(name: impl Into<String>, seq: CFiniteSeq) -> Self {
        CFiniteExpr::Atom {
            name: name.into(),
            seq,
        }
    }

    pub fn constant(c: Rational) -> Self {
        CFiniteExpr::Const(c)
    }

    pub fn add(self, other: CFiniteExpr) -> Self {
        CFiniteExpr::Add(Box::new(self), Box::new(other))
    }

    pub fn sub(self, other: CFiniteExpr) -> Self {
        self.add(other.neg())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        CFiniteExpr::Neg(Box::new(self))
    }

    pub fn mul(self, other: CFiniteExpr) -> Self {
        CFiniteExpr::Mul(Box::new(self), Box::new(other))
    }

    pub fn pow(self, e: u32) -> Self {
        match e {
            0 => CFiniteExpr::Const(Rational::one()),
            _ => (1..e).fold(self.clone(), |acc, _| acc.mul(self.clone())),
        }
    }

    pub fn shift(self, m: i64) -> Self {
        CFiniteExpr::Shift(Box::new(self), m)
    }

    pub fn multisection(self, m: usize, r: i64) -> Self {
        assert!(m >= 1, "multisection step must be positive");
        CFiniteExpr::Multisection {
            expr: Box::new(self),
            m,
            r,
        }
    }

    pub fn partial_sum(self) -> Self {
        CFiniteExpr::PartialSum(Box::new(self))
    }

    /// Terms at indices `from .. from + count`. Negative indices of atoms
    /// come from running their recurrence backwards; a partial sum is
    /// extended by `s(-1) = 0`.
    pub fn terms_from(&self, from: i64, count: usize) -> Result<Vec<Rational>, ProverError> {
        if count == 0 {
            return Ok(Vec::new());
        }
        Ok(match self {
            CFiniteExpr::Atom { name, seq } => {
                if from >= 0 {
                    let t = seq.terms(from as usize + count);
                    t[from as usize..].to_vec()
                } else {
                    let s = seq.shift(from);
                    if s.order() > 0 && seq.annihilator().last().is_some_and(Zero::is_zero) {
                        return Err(ProverError::NotEvaluable(format!(
                            "{name} at negative indices (its recurrence cannot run backwards)"
                        )));
                    }
                    s.terms(count)
                }
            }
            CFiniteExpr::Const(c) => vec![c.clone(); count],
            CFiniteExpr::Add(a, b) => {
                let (x, y) = (a.terms_from(from, count)?, b.terms_from(from, count)?);
                x.iter().zip(&y).map(|(u, v)| u + v).collect()
            }
            CFiniteExpr::Neg(a) => a.terms_from(from, count)?.into_iter().map(|v| -v).collect(),
            CFiniteExpr::Mul(a, b) => {
                let (x, y) = (a.terms_from(from, count)?, b.terms_from(from, count)?);
                x.iter().zip(&y).map(|(u, v)| u * v).collect()
            }
            CFiniteExpr::Shift(a, m) => a.terms_from(from + m, count)?,
            CFiniteExpr::Multisection { expr, m, r } => {
                let m = *m as i64;
                let inner = expr.terms_from(m * from + r, (m as usize) * (count - 1) + 1)?;
                inner.into_iter().step_by(m as usize).collect()
            }
            CFiniteExpr::PartialSum(a) => {
                let last = from + count as i64 - 1;
                let lo = from.min(0);
                let hi = last.max(-1);
                let e = a.terms_from(lo, (hi - lo + 1) as usize)?;
                let at = |j: i64| &e[(j - lo) as usize];
                // s(n) for n in lo..=hi, anchored at s(-1) = 0.
                let mut s = vec![Rational::zero(); (hi - lo + 1) as usize];
                let idx = |j: i64| (j - lo) as usize;
                for j in 0..=hi {
                    let prev = if j == 0 { Rational::zero() } else { s[idx(j - 1)].clone() };
                    s[idx(j)] = prev + at(j);
                }
                for j in (lo..-1).rev() {
                    s[idx(j)] = &s[idx(j + 1)] - at(j + 1);
                }
                s[idx(from)..=idx(last)].to_vec()
            }
        })
    }

    /// The expression as a single C-finite sequence, built with the
    /// closure operations.
    pub fn to_cfinite(&self) -> CFiniteSeq {
        match self {
            CFiniteExpr::Atom { seq, .. } => seq.clone(),
            CFiniteExpr::Const(c) if c.is_zero() => CFiniteSeq::zero(),
            CFiniteExpr::Const(c) => CFiniteSeq::constant(c.clone()),
            CFiniteExpr::Add(a, b) => a.to_cfinite().add(&b.to_cfinite()),
            CFiniteExpr::Neg(a) => a.to_cfinite().neg(),
            CFiniteExpr::Mul(a, b) => a.to_cfinite().mul(&b.to_cfinite()),
            CFiniteExpr::Shift(a, m) => a.to_cfinite().shift(*m),
            CFiniteExpr::Multisection { expr, m, r } => expr.to_cfinite().shift(*r).multisection(*m, 0),
            CFiniteExpr::PartialSum(a) => a.to_cfinite().partial_sum(),
        }
    }

    pub fn terms(&self, count: usize) -> Result<Vec<Rational>, ProverError> {
        self.terms_from(0, count)
    }
}

/// Order bound from the closure table: add `r+s`, mul `rs`, partial sum
/// `r+1`, shift and multisection `r`. A nonzero constant has order 1.
pub fn order_bound(e: &CFiniteExpr) -> usize {
    match e {
        CFiniteExpr::Atom { seq, .. } => seq.order(),
        CFiniteExpr::Const(c) => usize::from(!c.is_zero()),
        CFiniteExpr::Add(a, b) => order_bound(a) + order_bound(b),
        CFiniteExpr::Neg(a) | CFiniteExpr::Shift(a, _) => order_bound(a),
        CFiniteExpr::Mul(a, b) => order_bound(a) * order_bound(b),
        CFiniteExpr::Multisection { expr, .. } => order_bound(expr),
        CFiniteExpr::PartialSum(a) => order_bound(a) + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    Counterexample { index: usize, value: Rational },
}

/// Outcome of [`prove_zero`] with the full check transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroProof {
    pub bound: usize,
    /// `(n, e(n))` for `n = 0..=bound`.
    pub transcript: Vec<(usize, Rational)>,
    pub verdict: Verdict,
}

impl ZeroProof {
    pub fn is_proven(&self) -> bool {
        self.verdict == Verdict::Proven
    }
}

impl fmt::Display for ZeroProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Proven => write!(f, "Proven (bound {}, checked n=0..{})", self.bound, self.bound),
            Verdict::Counterexample { index, value } => write!(
                f,
                "Counterexample at n={index}: difference {value} (bound {})",
                self.bound
            ),
        }
    }
}

/// Proves `e = 0` by checking `e(0) … e(d)` with `d = order_bound(e)`.
pub fn prove_zero(e: &CFiniteExpr) -> Result<ZeroProof, ProverError> {
    let bound = order_bound(e);
    let values = e.terms(bound + 1)?;
    let verdict = match values.iter().position(|v| !v.is_zero()) {
        None => Verdict::Proven,
        Some(index) => Verdict::Counterexample {
            index,
            value: values[index].clone(),
        },
    };
    Ok(ZeroProof {
        bound,
        transcript: values.into_iter().enumerate().collect(),
        verdict,
    })
}

/// [`prove_zero`] on `lhs - rhs`.
pub fn prove_identity(lhs: &CFiniteExpr, rhs: &CFiniteExpr) -> Result<ZeroProof, ProverError> {
    prove_zero(&lhs.clone().sub(rhs.clone()))
}
