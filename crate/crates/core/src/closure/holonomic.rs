use num_traits::Zero;

use crate::arith::{clear_denominators, nullspace, Matrix, Polynomial, Rational, RationalFunction, RationalFunctions};
use crate::genfunc;
use crate::seq::{holonomic_failures, normalize_operator, HolonomicSeq, TermVector};

use super::{verification_length, ClosureError, ClosureReport};

/// `a(n+k) = Σ_{j<k} R_j(n)·a(n+j)` over `ℚ(n)`.
struct ForwardRule {
    coeffs: Vec<RationalFunction>,
}

impl ForwardRule {
    fn new(a: &HolonomicSeq) -> Self {
        let k = a.order();
        let lead = a.polys[0].shift(k as i64);
        let coeffs = (0..k)
            .map(|j| RationalFunction::new(-a.polys[k - j].shift(k as i64), lead.clone()))
            .collect();
        ForwardRule { coeffs }
    }

    fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Given `Σ αᵢ(n)·a(n+i)`, the same form for the shifted expression
    /// `Σ αᵢ(n+1)·a(n+i+1)`.
    fn shift(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        let k = self.order();
        let mut out = vec![RationalFunction::zero(); k];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.shift(1);
            if i + 1 < k {
                out[i + 1] = &out[i + 1] + &c;
            } else {
                for (j, r) in self.coeffs.iter().enumerate() {
                    out[j] = &out[j] + &(&c * r);
                }
            }
        }
        out
    }

    /// Coordinates of `a(n+t)` for `t = 0, 1, …, count-1`.
    fn powers(&self, count: usize) -> Vec<Vec<RationalFunction>> {
        let k = self.order();
        let mut out = Vec::with_capacity(count);
        let mut v: Vec<RationalFunction> = (0..k)
            .map(|i| if i == 0 { RationalFunction::one() } else { RationalFunction::zero() })
            .collect();
        for _ in 0..count {
            out.push(v.clone());
            v = self.shift(&v);
        }
        out
    }
}

/// First `T` such that `w₀ … w_T` are linearly dependent over `ℚ(n)`, with
/// the dependency scaled to polynomials without common factor.
fn first_dependency(w: &[Vec<RationalFunction>]) -> Option<Vec<Polynomial>> {
    let dim = w[0].len();
    for t in 0..w.len() {
        let m = Matrix::from_fn(dim, t + 1, |i, j| w[j][i].clone());
        let basis = if dim == 0 {
            vec![(0..=t).map(|j| if j == t { RationalFunction::one() } else { RationalFunction::zero() }).collect()]
        } else {
            nullspace(&RationalFunctions, &m)
        };
        if let Some(x) = basis.into_iter().next() {
            return Some(clear_denominators(&x));
        }
    }
    None
}


/// Turns `Σ_t x_t(n)·c(n+t) = 0` into backward form, dropping vanishing
/// extreme coefficients.
fn to_backward(x: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let lo = x.iter().position(|p| !p.is_zero())?;
    let hi = x.iter().rposition(|p| !p.is_zero())?;
    // With m = n + hi the coefficient of c(m - i) is x_{hi-i}(m - hi).
    let polys: Vec<Polynomial> = (0..=hi - lo).map(|i| x[hi - i].shift(-(hi as i64))).collect();
    Some(normalize_operator(&polys))
}

/// Chooses the smallest offset past every oracle index where the recurrence
/// fails and past every integer root of its leading coefficient, then
/// verifies term generation against the oracle.
fn finish(
    polys: Vec<Polynomial>,
    bound: usize,
    oracle: impl Fn(usize) -> Result<TermVector, ClosureError>,
) -> Result<ClosureReport<HolonomicSeq>, ClosureError> {
    let k = polys.len() - 1;
    if k > bound {
        return Err(ClosureError::VerificationFailed(format!(
            "order {k} exceeds the bound {bound}"
        )));
    }
    let need = verification_length(bound).max(20);
    let slack = 20;
    let probe = oracle(1)?;
    let start = probe.start;
    let mut offset = start + k;
    if let Some(r) = polys[0].integer_roots().into_iter().max() {
        if r >= offset as i64 {
            offset = r as usize + 1;
        }
    }
    let total = offset - start + need + slack;
    let data = oracle(total)?;
    if let Some(&n) = holonomic_failures(&polys, &data, offset).last() {
        offset = n + 1;
    }
    if data.end() < offset + need {
        return Err(ClosureError::VerificationFailed(
            "recurrence does not hold on the oracle".into(),
        ));
    }
    let initials = data.terms[..offset - start].to_vec();
    let result = HolonomicSeq::new(polys, initials, start, offset)?;
    let count = data.len();
    if result.terms(count)? != data {
        return Err(ClosureError::VerificationFailed(
            "generated terms differ from the oracle".into(),
        ));
    }
    Ok(ClosureReport {
        result,
        claimed_order_bound: bound,
        verified_terms: data.end() - offset,
    })
}

fn common_start(a: &HolonomicSeq, b: &HolonomicSeq) -> usize {
    a.start.max(b.start)
}

/// Terms `from .. from + count` of `a`.
fn window(a: &HolonomicSeq, from: usize, count: usize) -> Result<Vec<Rational>, ClosureError> {
    let t = a.terms(from - a.start + count)?;
    Ok(t.terms[from - a.start..].to_vec())
}

/// Termwise sum; order at most `r + s`.
pub fn holonomic_add(a: &HolonomicSeq, b: &HolonomicSeq) -> Result<ClosureReport<HolonomicSeq>, ClosureError> {
    let (fa, fb) = (ForwardRule::new(a), ForwardRule::new(b));
    let bound = fa.order() + fb.order();
    let (pa, pb) = (fa.powers(bound + 1), fb.powers(bound + 1));
    let w: Vec<Vec<RationalFunction>> = pa.into_iter().zip(pb).map(|(x, y)| [x, y].concat()).collect();
    let x = first_dependency(&w).ok_or(ClosureError::DependencyNotFound)?;
    let polys = to_backward(&x).ok_or(ClosureError::DependencyNotFound)?;
    let start = common_start(a, b);
    finish(polys, bound, |count| {
        let (ta, tb) = (window(a, start, count)?, window(b, start, count)?);
        Ok(TermVector::new(start, ta.iter().zip(&tb).map(|(x, y)| x + y).collect()))
    })
}

/// Termwise product; order at most `r·s`.
pub fn holonomic_hadamard(a: &HolonomicSeq, b: &HolonomicSeq) -> Result<ClosureReport<HolonomicSeq>, ClosureError> {
    let (fa, fb) = (ForwardRule::new(a), ForwardRule::new(b));
    let bound = fa.order() * fb.order();
    let (pa, pb) = (fa.powers(bound + 1), fb.powers(bound + 1));
    let w: Vec<Vec<RationalFunction>> = pa
        .iter()
        .zip(&pb)
        .map(|(x, y)| x.iter().flat_map(|u| y.iter().map(move |v| u * v)).collect())
        .collect();
    let x = first_dependency(&w).ok_or(ClosureError::DependencyNotFound)?;
    let polys = to_backward(&x).ok_or(ClosureError::DependencyNotFound)?;
    let start = common_start(a, b);
    finish(polys, bound, |count| {
        let (ta, tb) = (window(a, start, count)?, window(b, start, count)?);
        Ok(TermVector::new(start, ta.iter().zip(&tb).map(|(x, y)| x * y).collect()))
    })
}

/// `s(n) = Σ_{j=start}^{n} a(j)`; order at most `r + 1`. Works in the basis
/// `a(n), …, a(n+r-1), s(n)` using `s(n+1) = s(n) + a(n+1)`.
pub fn holonomic_partial_sum(a: &HolonomicSeq) -> Result<ClosureReport<HolonomicSeq>, ClosureError> {
    let fa = ForwardRule::new(a);
    let k = fa.order();
    let bound = k + 1;
    let next_a = fa.shift(&(0..k).map(|i| if i == 0 { RationalFunction::one() } else { RationalFunction::zero() }).collect::<Vec<_>>());
    let mut w = Vec::with_capacity(bound + 1);
    let mut v: Vec<RationalFunction> = vec![RationalFunction::zero(); k];
    let mut sigma = RationalFunction::one();
    for _ in 0..=bound {
        let mut row = v.clone();
        row.push(sigma.clone());
        w.push(row);
        // σ(n+1)·s(n+1) = σ(n+1)·s(n) + σ(n+1)·a(n+1)
        let s1 = sigma.shift(1);
        let mut nv = fa.shift(&v);
        if k > 0 {
            for (j, c) in next_a.iter().enumerate() {
                nv[j] = &nv[j] + &(&s1 * c);
            }
        }
        v = nv;
        sigma = s1;
    }
    let x = first_dependency(&w).ok_or(ClosureError::DependencyNotFound)?;
    let polys = to_backward(&x).ok_or(ClosureError::DependencyNotFound)?;
    let start = a.start;
    finish(polys, bound, |count| {
        let t = window(a, start, count)?;
        let mut acc = Rational::zero();
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
}

/// Convolution `Σ_{i+j=n} a(i)b(j)` of two sequences indexed from 0, via
/// the product of their generating functions' differential equations.
pub fn holonomic_cauchy(a: &HolonomicSeq, b: &HolonomicSeq) -> Result<ClosureReport<HolonomicSeq>, ClosureError> {
    if a.start != 0 || b.start != 0 {
        return Err(ClosureError::Seq(crate::seq::SeqError::Invalid(
            "Cauchy product needs sequences indexed from 0".into(),
        )));
    }
    let ode = genfunc::dfinite_multiply_seqs(a, b).map_err(|e| ClosureError::Genfunc(e.to_string()))?;
    holonomic_cauchy_from(a, b, &ode)
}

/// [`holonomic_cauchy`] reusing an already computed product operator.
pub fn holonomic_cauchy_from(
    a: &HolonomicSeq,
    b: &HolonomicSeq,
    ode: &genfunc::DfiniteProduct,
) -> Result<ClosureReport<HolonomicSeq>, ClosureError> {
    if a.start != 0 || b.start != 0 {
        return Err(ClosureError::Seq(crate::seq::SeqError::Invalid(
            "Cauchy product needs sequences indexed from 0".into(),
        )));
    }
    let skeleton = genfunc::ode_to_rec(&ode.operator).map_err(|e| ClosureError::Genfunc(e.to_string()))?;
    // The recurrence span read off the product operator.
    let bound = skeleton.len() - 1;
    finish(normalize_operator(&skeleton), bound, |count| {
        let (ta, tb) = (a.terms(count)?, b.terms(count)?);
        Ok(TermVector::from_zero(genfunc::convolve(&ta.terms, &tb.terms)))
    })
}
