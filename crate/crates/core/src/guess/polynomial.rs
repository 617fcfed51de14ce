use num_traits::Zero;

use crate::arith::{factorial, Polynomial, Rational};
use crate::seq::{PolySeq, TermVector};

use super::{GuessConfig, GuessError};

/// Least-degree polynomial through all data points, found by repeated
/// forward differencing.
///
/// Degree `d` is accepted when the `(d+1)`-th differences vanish and at
/// least `margin` points lie beyond the `d + 1` that determine it.
pub fn guess_polynomial(data: &TermVector, cfg: &GuessConfig) -> Result<PolySeq, GuessError> {
    let len = data.len();
    if len < 2 || len < cfg.margin + 1 {
        return Err(GuessError::InsufficientData {
            needed: (cfg.margin + 1).max(2),
            have: len,
        });
    }
    if data.terms.iter().all(Zero::is_zero) {
        return Ok(PolySeq::new(Polynomial::zero()));
    }
    let max_d = cfg.max_degree.min(len - cfg.margin - 1);
    let mut rows: Vec<Vec<Rational>> = vec![data.terms.clone()];
    for d in 0..=max_d {
        let prev = &rows[d];
        let next: Vec<Rational> = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
        let done = next.iter().all(Zero::is_zero);
        rows.push(next);
        if done {
            return Ok(PolySeq::new(newton_form(&rows, d, data.start)));
        }
    }
    Err(GuessError::NoFit)
}

/// `p(n) = Σ_j Δʲa(s)·C(n - s, j)` for `j ≤ d`.
fn newton_form(rows: &[Vec<Rational>], d: usize, start: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for (j, row) in rows.iter().enumerate().take(d + 1) {
        let c = &row[0] / factorial(j as u64);
        p = &p + &Polynomial::falling_factorial(j).scale(&c);
    }
    p.shift(-(start as i64))
}
