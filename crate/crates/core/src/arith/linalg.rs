//! Elimination over fields and over commutative rings with zero divisors.

use super::matrix::Matrix;
use super::ring::{FieldOps, PivotClass, RingOps};

/// Reduced row-echelon form over a field, with the pivot columns.
pub fn rref<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(&m[(r, c)]);
        for j in c..cols {
            m[(r, j)] = field.mul(&m[(r, j)], &inv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                let t = field.mul(&factor, &m[(r, j)]);
                m[(i, j)] = field.sub(&m[(i, j)], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// A basis of `{X : A·X = 0}`; empty when the kernel is trivial.
pub fn nullspace<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, a);
    let cols = a.cols();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&r[(i, free)]);
            }
            v
        })
        .collect()
}

/// One solution of `A·X = b`, with free variables set to zero; `None` when
/// the system is inconsistent.
pub fn solve<F: FieldOps>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = a.cols();
    let aug = Matrix::from_fn(a.rows(), cols + 1, |i, j| {
        if j < cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(field, &aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(i, cols)].clone();
    }
    Some(x)
}

pub fn rank<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> usize {
    rref(field, a).1.len()
}

/// Determinant of a square matrix over a field.
pub fn determinant<F: FieldOps>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&m[(i, c)])) else {
            return field.zero();
        };
        if p != c {
            m.swap_rows(p, c);
            det = field.neg(&det);
        }
        let pivot = m[(c, c)].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot);
        for i in c + 1..n {
            if field.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = field.mul(&m[(i, c)], &inv);
            for j in c..n {
                let t = field.mul(&factor, &m[(c, j)]);
                m[(i, j)] = field.sub(&m[(i, j)], &t);
            }
        }
    }
    det
}

/// Outcome of [`fraction_free_eliminate`].
#[derive(Debug, Clone, PartialEq)]
pub enum EliminationStatus<E> {
    Success,
    /// Every nonzero candidate in column `col` (rows `row..`) is a zero
    /// divisor; `candidate` is the first of them.
    ZeroDivisorPivot { row: usize, col: usize, candidate: E },
    /// The classifier could not decide for any nonzero candidate.
    UnknownPivot { row: usize, col: usize, candidate: E },
}

#[derive(Debug, Clone)]
pub struct Elimination<E> {
    pub echelon: Matrix<E>,
    pub pivots: Vec<usize>,
    pub status: EliminationStatus<E>,
}

/// Row-echelon form using only steps `r_i ← p·r_i − q·r_j`, where the pivot
/// `p` is a unit or a non-zero-divisor. Within a column, the first unit in
/// row order is preferred, then the first non-zero-divisor.
pub fn fraction_free_eliminate<R: RingOps>(ring: &R, a: &Matrix<R::Elem>) -> Elimination<R::Elem> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut chosen: Option<(usize, PivotClass)> = None;
        let mut blocked: Option<(usize, PivotClass)> = None;
        for i in r..rows {
            if ring.is_zero(&m[(i, c)]) {
                continue;
            }
            match ring.pivot_class(&m[(i, c)]) {
                PivotClass::Unit => {
                    chosen = Some((i, PivotClass::Unit));
                    break;
                }
                PivotClass::NonZeroDivisor => {
                    if chosen.is_none() {
                        chosen = Some((i, PivotClass::NonZeroDivisor));
                    }
                }
                class => {
                    if blocked.is_none() {
                        blocked = Some((i, class));
                    }
                }
            }
        }
        let Some((p, _)) = chosen else {
            if let Some((i, class)) = blocked {
                let candidate = m[(i, c)].clone();
                let status = if class == PivotClass::Unknown {
                    EliminationStatus::UnknownPivot { row: i, col: c, candidate }
                } else {
                    EliminationStatus::ZeroDivisorPivot { row: i, col: c, candidate }
                };
                return Elimination { echelon: m, pivots, status };
            }
            continue;
        };
        m.swap_rows(r, p);
        let pivot = m[(r, c)].clone();
        for i in r + 1..rows {
            if ring.is_zero(&m[(i, c)]) {
                continue;
            }
            let q = m[(i, c)].clone();
            for j in 0..cols {
                let lhs = ring.mul(&pivot, &m[(i, j)]);
                let rhs = ring.mul(&q, &m[(r, j)]);
                m[(i, j)] = ring.sub(&lhs, &rhs);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Elimination {
        echelon: m,
        pivots,
        status: EliminationStatus::Success,
    }
}

/// A nonzero kernel vector of an echelon matrix, computed without division.
///
/// The first non-pivot column is set to `-1`, later free columns to zero, and
/// pivot variables are solved bottom-up: for a row `p·x_c + S = 0` the
/// current vector is scaled by `p` and `x_c = -S`. Returns `None` when every
/// column holds a pivot.
pub fn echelon_kernel_vector<R: RingOps>(
    ring: &R,
    echelon: &Matrix<R::Elem>,
    pivots: &[usize],
) -> Option<Vec<R::Elem>> {
    let cols = echelon.cols();
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![ring.zero(); cols];
    x[free] = ring.neg(&ring.one());
    for (i, &c) in pivots.iter().enumerate().rev() {
        if c > free {
            // Only the zero vector reaches these variables.
            continue;
        }
        let s = (c + 1..cols).fold(ring.zero(), |acc, j| {
            if ring.is_zero(&x[j]) {
                acc
            } else {
                ring.add(&acc, &ring.mul(&echelon[(i, j)], &x[j]))
            }
        });
        let p = echelon[(i, c)].clone();
        for xj in x.iter_mut() {
            if !ring.is_zero(xj) {
                *xj = ring.mul(&p, xj);
            }
        }
        x[c] = ring.neg(&s);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, Rational};
    use crate::arith::ring::Rationals;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    fn is_kernel(a: &Matrix<Rational>, v: &[Rational]) -> bool {
        a.mul_vec(&Rationals, v).iter().all(Zero::is_zero)
    }

    #[test]
    fn single_equation_kernel() {
        let a = m(&[&[1, -3]]);
        let ns = nullspace(&Rationals, &a);
        assert_eq!(ns, vec![vec![rat(3), rat(1)]]);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let a = Matrix::identity(&Rationals, 2);
        assert!(nullspace(&Rationals, &a).is_empty());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&Rationals, &m(&[&[2, 1], &[7, 4]])), rat(1));
        assert_eq!(determinant(&Rationals, &m(&[&[1, 2], &[2, 4]])), rat(0));
        assert_eq!(determinant(&Rationals, &m(&[&[0, 1], &[1, 0]])), rat(-1));
    }

    #[test]
    fn fraction_free_over_rationals() {
        let a = m(&[&[2, 4, 6], &[1, 3, 5]]);
        let e = fraction_free_eliminate(&Rationals, &a);
        assert_eq!(e.status, EliminationStatus::Success);
        assert_eq!(e.pivots, vec![0, 1]);
        let v = echelon_kernel_vector(&Rationals, &e.echelon, &e.pivots).unwrap();
        assert!(is_kernel(&a, &v));
        assert!(v.iter().any(|x| !x.is_zero()));
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |v| {
                Matrix::from_fn(r, c, |i, j| rat(v[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn nullspace_vectors_annihilate(a in arb_matrix()) {
            let ns = nullspace(&Rationals, &a);
            prop_assert_eq!(ns.len(), a.cols() - rank(&Rationals, &a));
            for v in ns {
                prop_assert!(is_kernel(&a, &v));
            }
        }

        #[test]
        fn fraction_free_pivots_match_rref(a in arb_matrix()) {
            let e = fraction_free_eliminate(&Rationals, &a);
            let (_, pivots) = rref(&Rationals, &a);
            prop_assert_eq!(e.status, EliminationStatus::Success);
            prop_assert_eq!(&e.pivots, &pivots);
            if let Some(v) = echelon_kernel_vector(&Rationals, &e.echelon, &e.pivots) {
                prop_assert!(is_kernel(&a, &v));
                prop_assert!(v.iter().any(|x| !x.is_zero()));
            } else {
                prop_assert_eq!(pivots.len(), a.cols());
            }
        }
    }
}
