use num_traits::Zero;

use crate::arith::{nullspace, Matrix, Polynomial, Rational, Rationals};
use crate::seq::{normalize_operator, HolonomicSeq, TermVector};

use super::{GuessConfig, GuessError};

/// First polynomial-coefficient recurrence in the order `(k, d)` with `k`
/// major and `d` minor, among cells that leave `margin` surplus equations.
///
/// A cell has `(k+1)(d+1)` coefficients, one of which is fixed by scaling.
pub fn guess_holonomic(data: &TermVector, cfg: &GuessConfig) -> Result<HolonomicSeq, GuessError> {
    let len = data.len();
    let mut posed = false;
    for k in 1..=cfg.max_order.max(1) {
        for d in 0..=cfg.max_degree {
            let unknowns = (k + 1) * (d + 1) - 1;
            if len < k || len - k < unknowns + cfg.margin {
                break;
            }
            posed = true;
            if let Some(polys) = fit_cell(data, k, d) {
                if let Ok(h) = HolonomicSeq::from_data(polys, data) {
                    return Ok(h);
                }
            }
        }
    }
    if posed {
        Err(GuessError::NoFit)
    } else {
        Err(GuessError::InsufficientData {
            needed: 2 + cfg.margin + 1,
            have: len,
        })
    }
}

fn fit_cell(data: &TermVector, k: usize, d: usize) -> Option<Vec<Polynomial>> {
    let first = data.start + k;
    let rows = data.end() - first;
    let m = Matrix::from_fn(rows, (k + 1) * (d + 1), |r, col| {
        let n = first + r;
        let (i, j) = (col / (d + 1), col % (d + 1));
        let v = data.at(n - i);
        if v.is_zero() {
            return Rational::zero();
        }
        v * crate::arith::rat(n as i64).pow(j as i32)
    });
    let basis = nullspace(&Rationals, &m);
    let v = basis
        .into_iter()
        .find(|v| v[..=d].iter().any(|c| !c.is_zero()))?;
    let polys: Vec<Polynomial> = v.chunks(d + 1).map(|c| Polynomial::new(c.to_vec())).collect();
    Some(normalize_operator(&polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::guess::guess_cfinite;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn factorial() {
        let data = TermVector::from_ints(0, &[1, 1, 2, 6, 24, 120, 720, 5040, 40320]);
        let h = guess_holonomic(&data, &GuessConfig::default()).unwrap();
        assert_eq!(h.polys, vec![p(&[1]), p(&[0, -1])]);
        assert_eq!(h.recurrence_string(), "a(n) - n*a(n-1) = 0");
    }

    #[test]
    fn harmonic_numbers() {
        let mut h = rat(0);
        let terms: Vec<Rational> = (1..=12)
            .map(|n| {
                h += ratio(1, n);
                h.clone()
            })
            .collect();
        let data = TermVector::new(1, terms);
        let g = guess_holonomic(&data, &GuessConfig::default()).unwrap();
        assert_eq!(g.polys, vec![p(&[0, 1]), p(&[1, -2]), p(&[-1, 1])]);
        assert_eq!(g.offset, 3);
        assert_eq!(g.terms(12).unwrap(), data);
    }

    #[test]
    fn cfinite_is_degree_zero() {
        let data = TermVector::from_ints(0, &[2, 3, 5, 9, 17, 33, 65, 129, 257, 513, 1025]);
        let cfg = GuessConfig::default();
        let h = guess_holonomic(&data, &cfg).unwrap();
        assert_eq!(h.degree(), 0);
        let c = guess_cfinite(&data, &cfg).unwrap();
        let from_c: Vec<Polynomial> = c.annihilator().iter().map(|v| Polynomial::constant(v.clone())).collect();
        assert_eq!(h.polys, normalize_operator(&from_c));
    }
}
