use num_traits::Zero;

use crate::arith::{Polynomial, Rational, RationalFunction};
use crate::seq::{CFiniteSeq, PolySeq};

/// Numerator and denominator `1 + c₁x + … + c_kx^k` of the generating
/// function, before reduction.
pub fn cfinite_gf_parts(a: &CFiniteSeq) -> (Polynomial, Polynomial) {
    let k = a.order();
    let den = a.annihilator_poly();
    let num = truncated_product(&den, &a.terms(k), k);
    (num, den)
}

/// `Σ a(n)xⁿ` as a reduced rational function.
pub fn cfinite_gf(a: &CFiniteSeq) -> RationalFunction {
    let (num, den) = cfinite_gf_parts(a);
    let gf = RationalFunction::new(num, den);
    debug_assert_eq!(gf.series(2 * a.order() + 4), a.terms(2 * a.order() + 4));
    gf
}

/// `Σ p(n)xⁿ = q(x)/(1-x)^{d+1}` with `deg q ≤ d`.
pub fn polyseq_gf(p: &PolySeq) -> RationalFunction {
    let d = p.degree();
    if d < 0 {
        return RationalFunction::zero();
    }
    let e = d as usize + 1;
    let den = Polynomial::from_ints(&[1, -1]).pow(e as u32);
    let num = truncated_product(&den, &p.terms(e).terms, e);
    RationalFunction::new(num, den)
}

/// `(den · Σ tᵢxⁱ) mod x^len`.
fn truncated_product(den: &Polynomial, t: &[Rational], len: usize) -> Polynomial {
    let mut c = vec![Rational::zero(); len];
    for (n, slot) in c.iter_mut().enumerate() {
        for j in 0..=n {
            *slot += den.coeff(j) * &t[n - j];
        }
    }
    Polynomial::new(c)
}
