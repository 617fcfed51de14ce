use num_traits::{One, Zero};

use crate::arith::{nullspace, Matrix, Rational, Rationals};
use crate::seq::{CFiniteSeq, TermVector};

use super::{GuessConfig, GuessError};

/// Smallest-order constant-coefficient recurrence fitting all shift
/// equations, searching `k = 0, 1, …, max_order`.
///
/// Order `k` is posed only while the data supplies `k + margin` equations.
/// The model is indexed relative to `data.start`.
pub fn guess_cfinite(data: &TermVector, cfg: &GuessConfig) -> Result<CFiniteSeq, GuessError> {
    let len = data.len();
    if len < 2 + cfg.margin {
        return Err(GuessError::InsufficientData {
            needed: 2 + cfg.margin,
            have: len,
        });
    }
    if data.terms.iter().all(Zero::is_zero) {
        return Ok(CFiniteSeq::zero());
    }
    let t = &data.terms;
    for k in 1..=cfg.max_order {
        if len < 2 * k + cfg.margin {
            break;
        }
        if let Some(ann) = fit_order(t, k) {
            return Ok(CFiniteSeq::new(ann, t[..k].to_vec()).expect("monic annihilator"));
        }
    }
    Err(GuessError::NoFit)
}

/// A monic annihilator of order `k` satisfied at every index `k..len`.
pub(crate) fn fit_order(t: &[Rational], k: usize) -> Option<Vec<Rational>> {
    let rows = t.len() - k;
    let m = Matrix::from_fn(rows, k + 1, |r, i| t[r + k - i].clone());
    let basis = nullspace(&Rationals, &m);
    let v = basis.into_iter().find(|v| !v[0].is_zero())?;
    let lead = v[0].clone();
    let ann: Vec<Rational> = v.iter().map(|c| c / &lead).collect();
    debug_assert!(ann[0].is_one());
    Some(ann)
}
