//! Closure of X-recursive sequences by undetermined coefficients over the
//! ring of C-finite sequences.
//!
//! Coefficients cannot be divided, so each shifted term is first brought
//! into the span of the basis after multiplying by a known C-finite factor:
//! `M_t(n)·a(n+t) = Σ_{i<k} α_{t,i}(n)·a(n+i)`. An ansatz
//! `Σ_t y_t(n)·M_t(n)·(…)(n+t) = 0` then turns into a homogeneous linear
//! system for the `y_t`, solved by fraction-free elimination.

use num_traits::Zero;

use crate::arith::{echelon_kernel_vector, fraction_free_eliminate, EliminationStatus, Matrix, RingOps};
use crate::seq::{CFiniteRing, CFiniteSeq, TermVector, XRecursiveSeq};

use super::{ClosureError, ClosureReport};

/// Tuning for the X-recursive constructions.
#[derive(Debug, Clone, Copy)]
pub struct XRecOptions {
    pub ring: CFiniteRing,
    /// Extra shifts (unknowns) to try after a failed elimination.
    pub retry_depth: usize,
    /// Minimum number of oracle terms checked past the offset.
    pub verify_terms: usize,
}

impl Default for XRecOptions {
    fn default() -> Self {
        XRecOptions {
            ring: CFiniteRing::default(),
            retry_depth: 0,
            verify_terms: 30,
        }
    }
}

/// Multipliers `M_t` and coordinates `α_t` of `a(n+t)` for `t < count`.
struct Reduction {
    mult: Vec<CFiniteSeq>,
    alpha: Vec<Vec<CFiniteSeq>>,
}

fn reduce(a: &XRecursiveSeq, count: usize, ring: &CFiniteRing) -> Reduction {
    let k = a.order();
    // Forward form: L(n)·a(n+k) = -Σ_{j<k} A_j(n)·a(n+j).
    let lead = a.coeffs[0].shift(k as i64);
    let low: Vec<CFiniteSeq> = (0..k).map(|j| a.coeffs[k - j].shift(k as i64)).collect();
    let one = ring.one();
    let mut mult = Vec::with_capacity(count);
    let mut alpha: Vec<Vec<CFiniteSeq>> = Vec::with_capacity(count);
    for t in 0..count {
        if t < k {
            mult.push(one.clone());
            alpha.push((0..k).map(|i| if i == t { one.clone() } else { ring.zero() }).collect());
            continue;
        }
        let prev_m: &CFiniteSeq = &mult[t - 1];
        let prev: Vec<CFiniteSeq> = alpha[t - 1].iter().map(|c| c.shift(1)).collect();
        let top = &prev[k - 1];
        let mut next = Vec::with_capacity(k);
        for i in 0..k {
            let carried = if i == 0 { ring.zero() } else { ring.mul(&lead, &prev[i - 1]) };
            let reduced = ring.mul(top, &low[i]);
            next.push(ring.sub(&carried, &reduced));
        }
        mult.push(ring.mul(&lead, &prev_m.shift(1)));
        alpha.push(next);
    }
    Reduction { mult, alpha }
}

/// Solves `A·y = 0` over the C-finite ring, or reports the blocking pivot.
fn kernel(a: &Matrix<CFiniteSeq>, ring: &CFiniteRing) -> Result<Vec<CFiniteSeq>, ClosureError> {
    let e = fraction_free_eliminate(ring, a);
    match e.status {
        EliminationStatus::Success => {}
        EliminationStatus::ZeroDivisorPivot { row, col, candidate } => {
            let verdict = ring.verdict(&candidate);
            return Err(ClosureError::ZeroDivisorPivot {
                row,
                col,
                pivot: candidate.minimize(),
                verdict,
            });
        }
        EliminationStatus::UnknownPivot { row, col, candidate } => {
            let verdict = ring.verdict(&candidate);
            return Err(ClosureError::UnknownPivot {
                row,
                col,
                pivot: candidate.minimize(),
                verdict,
            });
        }
    }
    let y = echelon_kernel_vector(ring, &e.echelon, &e.pivots).ok_or(ClosureError::DependencyNotFound)?;
    let residual = a.mul_vec(ring, &y);
    if residual.iter().any(|r| !r.is_zero()) {
        return Err(ClosureError::VerificationFailed("kernel vector does not solve the system".into()));
    }
    Ok(y)
}

/// Builds the backward-form sequence from `Σ_t E_t(n)·c(n+t) = 0` and checks
/// it against the oracle.
fn finish(
    e: Vec<CFiniteSeq>,
    bound: usize,
    valid_from: usize,
    opts: &XRecOptions,
    oracle: impl Fn(usize) -> Result<TermVector, ClosureError>,
) -> Result<ClosureReport<XRecursiveSeq>, ClosureError> {
    let lo = e.iter().position(|c| !c.is_zero()).ok_or(ClosureError::DependencyNotFound)?;
    let hi = e.iter().rposition(|c| !c.is_zero()).expect("nonzero entry exists");
    if hi - lo == 0 {
        return Err(ClosureError::DependencyNotFound);
    }
    // With m = n + hi the coefficient of c(m - i) is E_{hi-i}(m - hi).
    let coeffs: Vec<CFiniteSeq> = (0..=hi - lo).map(|i| e[hi - i].shift(-(hi as i64))).collect();
    let order = hi - lo;
    let start = oracle(1)?.start;
    let offset = (valid_from + hi).max(start + order);
    let count = offset - start + opts.verify_terms.max(super::verification_length(bound));
    let data = oracle(count)?;
    let result = XRecursiveSeq::new(coeffs, data.terms[..offset - start].to_vec(), start, offset)?;
    if !result.annihilates(&data) {
        return Err(ClosureError::VerificationFailed(
            "recurrence does not annihilate the oracle".into(),
        ));
    }
    Ok(ClosureReport {
        result,
        claimed_order_bound: bound,
        verified_terms: data.end() - offset,
    })
}

/// First index `n` from which every forward rule used at `n, n+1, …` is
/// valid.
fn rule_start(a: &XRecursiveSeq) -> usize {
    a.offset - a.order()
}

fn window(a: &XRecursiveSeq, from: usize, count: usize) -> Result<Vec<crate::arith::Rational>, ClosureError> {
    let t = a.terms(from - a.start + count)?;
    Ok(t.terms[from - a.start..].to_vec())
}

/// Runs `attempt` with `K, K+1, …, K + retry_depth` unknowns and returns the
/// first success, or the first failure.
fn with_retries<T>(
    base: usize,
    opts: &XRecOptions,
    mut attempt: impl FnMut(usize) -> Result<T, ClosureError>,
) -> Result<T, ClosureError> {
    let first = attempt(base);
    if first.is_ok() {
        return first;
    }
    for extra in 1..=opts.retry_depth {
        if let Ok(r) = attempt(base + extra) {
            return Ok(r);
        }
    }
    first
}

/// Termwise sum. The ansatz has `k_a + k_b + 1` unknowns; the order of a
/// successful result is at most `k_a + k_b`.
pub fn xrecursive_add(
    a: &XRecursiveSeq,
    b: &XRecursiveSeq,
    opts: &XRecOptions,
) -> Result<ClosureReport<XRecursiveSeq>, ClosureError> {
    let ring = &opts.ring;
    let (ka, kb) = (a.order(), b.order());
    let bound = ka + kb;
    with_retries(bound + 1, opts, |unknowns| {
        let (ra, rb) = (reduce(a, unknowns, ring), reduce(b, unknowns, ring));
        let m = Matrix::from_fn(ka + kb, unknowns, |row, t| {
            if row < ka {
                ring.mul(&rb.mult[t], &ra.alpha[t][row])
            } else {
                ring.mul(&ra.mult[t], &rb.alpha[t][row - ka])
            }
        });
        let y = kernel(&m, ring)?;
        let e: Vec<CFiniteSeq> = (0..unknowns)
            .map(|t| ring.mul(&y[t], &ring.mul(&ra.mult[t], &rb.mult[t])))
            .collect();
        let start = a.start.max(b.start);
        finish(e, unknowns - 1, rule_start(a).max(rule_start(b)).max(start), opts, |count| {
            let (ta, tb) = (window(a, start, count)?, window(b, start, count)?);
            Ok(TermVector::new(start, ta.iter().zip(&tb).map(|(x, y)| x + y).collect()))
        })
    })
}

/// Termwise product. The ansatz has `k_a·k_b + 1` unknowns in the basis
/// `a(n+i)·b(n+j)`.
pub fn xrecursive_hadamard(
    a: &XRecursiveSeq,
    b: &XRecursiveSeq,
    opts: &XRecOptions,
) -> Result<ClosureReport<XRecursiveSeq>, ClosureError> {
    let ring = &opts.ring;
    let (ka, kb) = (a.order(), b.order());
    let bound = ka * kb;
    with_retries(bound + 1, opts, |unknowns| {
        let (ra, rb) = (reduce(a, unknowns, ring), reduce(b, unknowns, ring));
        let m = Matrix::from_fn(ka * kb, unknowns, |row, t| {
            ring.mul(&ra.alpha[t][row / kb], &rb.alpha[t][row % kb])
        });
        let y = kernel(&m, ring)?;
        let e: Vec<CFiniteSeq> = (0..unknowns)
            .map(|t| ring.mul(&y[t], &ring.mul(&ra.mult[t], &rb.mult[t])))
            .collect();
        let start = a.start.max(b.start);
        finish(e, unknowns - 1, rule_start(a).max(rule_start(b)).max(start), opts, |count| {
            let (ta, tb) = (window(a, start, count)?, window(b, start, count)?);
            Ok(TermVector::new(start, ta.iter().zip(&tb).map(|(x, y)| x * y).collect()))
        })
    })
}

/// `s(n) = Σ_{j=start}^{n} a(j)` in the basis `a(n), …, a(n+k-1), s(n)`.
///
/// With `P_t = M_1⋯M_t`, `P_t·s(n+t) = P_t·s(n) + Σ_{u=1}^{t} (P_t/M_u)·α_u`,
/// where `P_t/M_u` is the product of the other multipliers.
pub fn xrecursive_partial_sum(
    a: &XRecursiveSeq,
    opts: &XRecOptions,
) -> Result<ClosureReport<XRecursiveSeq>, ClosureError> {
    let ring = &opts.ring;
    let k = a.order();
    let bound = k + 1;
    with_retries(bound + 1, opts, |unknowns| {
        let r = reduce(a, unknowns, ring);
        let prod = |t: usize, skip: usize| {
            (1..=t)
                .filter(|&u| u != skip)
                .fold(ring.one(), |acc, u| ring.mul(&acc, &r.mult[u]))
        };
        let p: Vec<CFiniteSeq> = (0..unknowns).map(|t| prod(t, usize::MAX)).collect();
        let m = Matrix::from_fn(k + 1, unknowns, |row, t| {
            if row == k {
                return p[t].clone();
            }
            (1..=t).fold(ring.zero(), |acc, u| {
                ring.add(&acc, &ring.mul(&prod(t, u), &r.alpha[u][row]))
            })
        });
        let y = kernel(&m, ring)?;
        let e: Vec<CFiniteSeq> = (0..unknowns).map(|t| ring.mul(&y[t], &p[t])).collect();
        let start = a.start;
        finish(e, unknowns - 1, rule_start(a).max(start), opts, |count| {
            let t = window(a, start, count)?;
            let mut acc = crate::arith::Rational::zero();
            Ok(TermVector::new(
                start,
                t.into_iter()
                    .map(|v| {
                        acc += v;
                        acc.clone()
                    })
                    .collect(),
            ))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::closure::cfinite_add;
    use crate::seq::{ZeroDivisorTag, special::somos2014_terms};

    fn one() -> CFiniteSeq {
        CFiniteSeq::constant(rat(1))
    }

    /// `a(n) = C(n)·a(n-1)`, `a(0) = 1`.
    fn first_order(c: CFiniteSeq) -> XRecursiveSeq {
        XRecursiveSeq::from_zero(vec![one(), c.neg()], vec![rat(1)]).unwrap()
    }

    #[test]
    fn power_of_two_plus_fibonacci_coefficients() {
        let a = first_order(CFiniteSeq::geometric(rat(1), rat(2)));
        let b = first_order(CFiniteSeq::fibonacci().shift(1));
        let r = xrecursive_add(&a, &b, &XRecOptions::default()).unwrap();
        assert!(r.result.order() <= 2);
        assert!(r.verified_terms >= 30);
        // Oracle: direct products.
        let (mut x, mut y) = (rat(1), rat(1));
        let f = CFiniteSeq::fibonacci().terms(50);
        let mut sums = vec![rat(2)];
        for n in 1..40 {
            x *= rat(2).pow(n as i32);
            y *= &f[n + 1];
            sums.push(&x + &y);
        }
        assert!(r.result.annihilates(&TermVector::from_zero(sums)));
    }

    #[test]
    fn constant_coefficients_agree_with_cfinite_sum() {
        let fib = XRecursiveSeq::from_zero(vec![one(), one().neg(), one().neg()], vec![rat(0), rat(1)]).unwrap();
        let geo = first_order(CFiniteSeq::constant(rat(3)));
        let r = xrecursive_add(&fib, &geo, &XRecOptions::default()).unwrap();
        for c in &r.result.coeffs {
            assert!(c.minimize().order() <= 1);
        }
        let c = cfinite_add(&CFiniteSeq::fibonacci(), &CFiniteSeq::geometric(rat(1), rat(3))).unwrap();
        let oracle = TermVector::from_zero(c.result.terms(30));
        assert!(r.result.annihilates(&oracle));
    }

    #[test]
    fn engineered_zero_divisor_pivot() {
        // a(n) = a(n-1) + a(n-2) and b(n) = b(n-1) + (-1)ⁿ b(n-2).
        let a = XRecursiveSeq::from_zero(vec![one(), one().neg(), one().neg()], vec![rat(1), rat(1)]).unwrap();
        let alt = CFiniteSeq::geometric(rat(1), rat(-1));
        let b = XRecursiveSeq::from_zero(vec![one(), one().neg(), alt.neg()], vec![rat(1), rat(1)]).unwrap();
        let err = xrecursive_add(&a, &b, &XRecOptions::default()).unwrap_err();
        let ClosureError::ZeroDivisorPivot { pivot, verdict, row, col } = err else {
            panic!("expected a zero-divisor pivot, got {err:?}");
        };
        assert_eq!((row, col), (2, 2));
        let target = CFiniteSeq::from_ints(&[1, 0, -1], &[0, -2]).unwrap();
        assert_eq!(pivot, target);
        assert_eq!(verdict.tag, ZeroDivisorTag::ZeroDivisor);
    }

    #[test]
    fn hadamard_of_first_order() {
        let a = first_order(CFiniteSeq::geometric(rat(1), rat(2)));
        let b = first_order(CFiniteSeq::fibonacci().shift(1));
        let r = xrecursive_hadamard(&a, &b, &XRecOptions::default()).unwrap();
        assert_eq!(r.result.order(), 1);
        let ta = a.terms(30).unwrap();
        let tb = b.terms(30).unwrap();
        let prod = TermVector::from_zero(ta.terms.iter().zip(&tb.terms).map(|(x, y)| x * y).collect());
        assert!(r.result.annihilates(&prod));
        // The coefficient ratio is the ring product 2ⁿ·F(n+1).
        let ratio = r.result.coeffs[1].neg();
        let lead = &r.result.coeffs[0];
        let expect = CFiniteSeq::geometric(rat(1), rat(2)).mul(&CFiniteSeq::fibonacci().shift(1));
        for n in 1..20 {
            assert_eq!(ratio.term(n), lead.term(n) * expect.term(n));
        }
        let unit = first_order(one());
        let same = xrecursive_hadamard(&a, &unit, &XRecOptions::default()).unwrap();
        assert!(same.result.annihilates(&a.terms(30).unwrap()));
    }

    #[test]
    fn partial_sum_of_somos_like() {
        let a = first_order(CFiniteSeq::fibonacci().shift(1));
        assert_eq!(a.terms(10).unwrap(), somos2014_terms(10).unwrap());
        let r = xrecursive_partial_sum(&a, &XRecOptions::default()).unwrap();
        assert!(r.result.order() <= 2);
        let t = somos2014_terms(40).unwrap();
        let mut acc = rat(0);
        let sums: Vec<_> = t.terms.iter().map(|v| {
            acc += v;
            acc.clone()
        }).collect();
        assert!(r.result.annihilates(&TermVector::from_zero(sums)));
    }
}
