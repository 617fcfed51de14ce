use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{solve, Matrix, Polynomial, Rational, RingOps};
use crate::seq::{CFiniteSeq, XRecursiveSeq};

use super::{verification_order, AlgebraicField, AlgebraicScalar, GenfuncError};

/// `coefficient(x) · dʲ/dxʲ [f(αx)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub scale: AlgebraicScalar,
    pub derivative_order: usize,
    /// Coefficients of `x⁰, x¹, …`.
    pub coefficient: Vec<AlgebraicScalar>,
}

impl RelationTerm {
    /// The coefficient as a rational polynomial, when it is one.
    pub fn rational_coefficient(&self) -> Option<Polynomial> {
        self.coefficient
            .iter()
            .map(AlgebraicScalar::as_rational)
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new)
    }
}

/// `f(x) = constant(x) + Σ terms`, with every scalar in `ℚ[t]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledDiffRelation {
    pub modulus: Polynomial,
    pub terms: Vec<RelationTerm>,
    pub constant: Polynomial,
}

/// Splits a C-finite sequence as `Σᵢ qᵢ(n)·αᵢⁿ` with the roots `αᵢ` of its
/// characteristic polynomial in one extension `ℚ[t]/(μ)`.
struct RootDecomposition {
    field: AlgebraicField,
    /// `(αᵢ, coefficients of qᵢ)`.
    parts: Vec<(AlgebraicScalar, Vec<AlgebraicScalar>)>,
}

fn decompose(c: &CFiniteSeq) -> Result<RootDecomposition, GenfuncError> {
    let k = c.order();
    let chi = c.charpoly();
    if k > 0 && chi.coeff(0).is_zero() {
        return Err(GenfuncError::UnsupportedCoefficientShape(
            "characteristic polynomial has the root 0".into(),
        ));
    }
    let roots = chi.rational_roots();
    let mut rest = chi.monic();
    for (r, m) in &roots {
        let lin = Polynomial::linear(-r.clone());
        for _ in 0..*m {
            rest = rest.div_exact(&lin).expect("root divides");
        }
    }
    let field = match rest.degree() {
        d if d <= 0 => AlgebraicField::new(Polynomial::x()),
        2 if rest.is_squarefree() => AlgebraicField::new(rest.clone()),
        2 => unreachable!("a repeated quadratic root would be rational"),
        _ if !rest.is_squarefree() => {
            return Err(GenfuncError::UnsupportedCoefficientShape(
                "repeated irrational roots".into(),
            ))
        }
        d => {
            return Err(GenfuncError::UnsupportedCoefficientShape(format!(
                "irrational roots of degree {d} over the rationals; only one quadratic extension is supported"
            )))
        }
    };
    let mut slots: Vec<(AlgebraicScalar, usize)> = roots
        .iter()
        .map(|(r, m)| (field.from_rational(r.clone()), *m))
        .collect();
    if rest.degree() == 2 {
        // Roots t and -b - t of t² + bt + c.
        let t = field.generator();
        let other = &field.from_rational(-rest.coeff(1)) - &t;
        slots.push((t, 1));
        slots.push((other, 1));
    }
    // C(n) = Σ b_{i,j} nʲ αᵢⁿ, fitted on n = 0..k.
    let columns: Vec<(usize, usize)> = slots
        .iter()
        .enumerate()
        .flat_map(|(i, (_, m))| (0..*m).map(move |j| (i, j)))
        .collect();
    let m = Matrix::from_fn(k, columns.len(), |n, col| {
        let (i, j) = columns[col];
        slots[i].0.pow(n).scale(&Rational::from_integer((n as i64).pow(j as u32).into()))
    });
    let rhs: Vec<AlgebraicScalar> = c.terms(k).into_iter().map(|v| field.from_rational(v)).collect();
    let b = solve(&field, &m, &rhs).ok_or_else(|| {
        GenfuncError::UnsupportedCoefficientShape("root decomposition is inconsistent".into())
    })?;
    let mut parts: Vec<(AlgebraicScalar, Vec<AlgebraicScalar>)> =
        slots.iter().map(|(a, m)| (a.clone(), Vec::with_capacity(*m))).collect();
    for ((i, _), v) in columns.iter().zip(b) {
        parts[*i].1.push(v);
    }
    Ok(RootDecomposition { field, parts })
}

fn constant_value(c: &CFiniteSeq) -> Option<Rational> {
    let m = c.minimize();
    let t = m.terms(m.order() + 2);
    (m.order() == 1 && t.iter().all(|v| *v == t[0])).then(|| t[0].clone())
}

/// For `a(n) = C(n)·a(n-1)` with `C` C-finite, the relation
/// `f(x) = P(x) + Σᵢ Σₘ αᵢ·e_{i,m}·x^{m+1}·dᵐ/dxᵐ[f(αᵢx)]`, where
/// `C(n) = Σ qᵢ(n)αᵢⁿ`, `qᵢ(n+1) = Σₘ e_{i,m}·n(n-1)…(n-m+1)` and `P`
/// collects the indices before the recurrence applies.
///
/// Supported coefficient shapes: rational roots of any multiplicity plus at
/// most one pair of conjugate quadratic roots.
pub fn xrecursive_first_order_funceq(a: &XRecursiveSeq) -> Result<ScaledDiffRelation, GenfuncError> {
    if a.order() != 1 {
        return Err(GenfuncError::UnsupportedCoefficientShape(format!(
            "order {} (only first-order recurrences are supported)",
            a.order()
        )));
    }
    let lead = constant_value(&a.coeffs[0]).ok_or_else(|| {
        GenfuncError::UnsupportedCoefficientShape("leading coefficient is not a constant".into())
    })?;
    let c = a.coeffs[1].scale(&-lead.recip()).minimize();
    let dec = decompose(&c)?;
    let field = &dec.field;
    let mut terms = Vec::new();
    for (alpha, q) in &dec.parts {
        // Falling-factorial coordinates of q(n+1).
        let mut e = vec![field.zero(); q.len()];
        for (j, bj) in q.iter().enumerate() {
            let shifted = Polynomial::from_ints(&[1, 1]).pow(j as u32);
            for (m, f) in shifted.to_falling_factorial_basis().into_iter().enumerate() {
                e[m] = &e[m] + &bj.scale(&f);
            }
        }
        for (m, em) in e.into_iter().enumerate() {
            if em.is_zero() {
                continue;
            }
            let mut coefficient = vec![field.zero(); m + 2];
            coefficient[m + 1] = alpha * &em;
            terms.push(RelationTerm {
                scale: alpha.clone(),
                derivative_order: m,
                coefficient,
            });
        }
    }
    terms.sort_by(|x, y| y.derivative_order.cmp(&x.derivative_order));

    let t = verification_order(c.order());
    let seq = series(a, t + 1 + terms.len() + 2)?;
    let mut constant = vec![Rational::zero(); a.offset.max(1)];
    for (n, slot) in constant.iter_mut().enumerate() {
        *slot = if n == 0 {
            seq[0].clone()
        } else {
            &seq[n] - c.term(n) * &seq[n - 1]
        };
    }
    let rel = ScaledDiffRelation {
        modulus: field.modulus.clone(),
        terms,
        constant: Polynomial::new(constant),
    };
    if !verify_series_relation(&rel, &seq, t) {
        return Err(GenfuncError::VerificationFailed(
            "functional equation does not match the series".into(),
        ));
    }
    Ok(rel)
}

fn series(a: &XRecursiveSeq, count: usize) -> Result<Vec<Rational>, GenfuncError> {
    let mut out = vec![Rational::zero(); a.start.min(count)];
    if count > a.start {
        out.extend(a.terms(count - a.start)?.terms);
    }
    Ok(out)
}

/// Whether both sides of `rel` agree through `x^t` when `f = Σ seq[n]xⁿ`.
/// Returns `false` when `seq` is too short to decide.
pub fn verify_series_relation(rel: &ScaledDiffRelation, seq: &[Rational], t: usize) -> bool {
    let field = AlgebraicField::new(rel.modulus.clone());
    let max_d = rel.terms.iter().map(|r| r.derivative_order).max().unwrap_or(0);
    if seq.len() < t + 1 + max_d {
        return false;
    }
    let mut rhs: Vec<AlgebraicScalar> = (0..=t).map(|n| field.from_rational(rel.constant.coeff(n))).collect();
    for term in &rel.terms {
        let j = term.derivative_order;
        // [xⁿ] dʲ/dxʲ f(αx) = (n+j)(n+j-1)…(n+1)·a(n+j)·α^{n+j}.
        let ff = Polynomial::falling_factorial(j);
        let mut alpha_pow = term.scale.pow(j);
        let mut g = Vec::with_capacity(t + 1);
        for n in 0..=t {
            let c = ff.eval_int((n + j) as i64) * &seq[n + j];
            g.push(alpha_pow.scale(&c));
            alpha_pow = &alpha_pow * &term.scale;
        }
        for (p, qp) in term.coefficient.iter().enumerate() {
            if qp.is_zero() {
                continue;
            }
            for n in p..=t {
                rhs[n] = &rhs[n] + &(qp * &g[n - p]);
            }
        }
    }
    rhs.iter()
        .zip(seq)
        .all(|(r, s)| r.as_rational().as_ref() == Some(s))
}

fn scalar_string(a: &AlgebraicScalar) -> (bool, String) {
    match a.as_rational() {
        Some(r) => (r.is_negative(), r.abs().to_string()),
        None => (false, a.to_string()),
    }
}

impl fmt::Display for ScaledDiffRelation {
    /// `f'(αx)` stands for `d/dx [f(αx)]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for term in &self.terms {
            let (_, scale) = scalar_string(&term.scale);
            let arg = if term.scale.as_rational().is_some_and(|r| r.is_one()) {
                "x".to_string()
            } else {
                format!("{scale}x")
            };
            let prime = "'".repeat(term.derivative_order);
            for (p, c) in term.coefficient.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (neg, mut s) = scalar_string(c);
                if s == "1" {
                    s.clear();
                }
                let xp = match p {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{p}"),
                };
                parts.push((neg, format!("{s}{xp}f{prime}({arg})")));
            }
        }
        let constant = self.constant.display_with("x");
        if !self.constant.is_zero() {
            parts.push((false, constant));
        }
        write!(f, "f(x) = ")?;
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, s)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => write!(f, "{s}")?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn one() -> CFiniteSeq {
        CFiniteSeq::constant(rat(1))
    }

    fn first_order(c: CFiniteSeq) -> XRecursiveSeq {
        XRecursiveSeq::from_zero(vec![one(), c.neg()], vec![rat(1)]).unwrap()
    }

    #[test]
    fn polynomial_times_power_coefficient() {
        // C(n) = (n+1)·2ⁿ.
        let c = CFiniteSeq::from_ints(&[1, -4, 4], &[1, 4]).unwrap();
        let a = first_order(c);
        let rel = xrecursive_first_order_funceq(&a).unwrap();
        assert_eq!(rel.terms.len(), 2);
        let two = rat(2);
        assert_eq!(rel.terms[0].scale.as_rational(), Some(two.clone()));
        assert_eq!(rel.terms[0].derivative_order, 1);
        assert_eq!(rel.terms[0].rational_coefficient(), Some(Polynomial::from_ints(&[0, 0, 2])));
        assert_eq!(rel.terms[1].scale.as_rational(), Some(two));
        assert_eq!(rel.terms[1].derivative_order, 0);
        assert_eq!(rel.terms[1].rational_coefficient(), Some(Polynomial::from_ints(&[0, 4])));
        assert_eq!(rel.constant, Polynomial::one());
        assert_eq!(rel.to_string(), "f(x) = 2x^2f'(2x) + 4xf(2x) + 1");
        let t = a.terms(40).unwrap().terms;
        assert!(verify_series_relation(&rel, &t, 25));

        let mut bad = rel.clone();
        bad.terms[1].coefficient[1] = AlgebraicScalar::rational(&rel.modulus, rat(5));
        assert!(!verify_series_relation(&bad, &t, 25));
    }

    #[test]
    fn fibonacci_coefficient_uses_golden_field() {
        let a = first_order(CFiniteSeq::fibonacci());
        let rel = xrecursive_first_order_funceq(&a).unwrap();
        assert_eq!(rel.modulus, Polynomial::from_ints(&[-1, -1, 1]));
        assert_eq!(rel.terms.len(), 2);
        for term in &rel.terms {
            assert_eq!(term.derivative_order, 0);
            assert!(term.scale.as_rational().is_none());
            // Binet: the coefficient of x is ±α/(2t-1).
            let s5 = (&term.coefficient[1] * &term.coefficient[1]).as_rational();
            let alpha2 = &term.scale * &term.scale;
            assert_eq!(
                (&term.coefficient[1] * &term.coefficient[1]),
                alpha2.scale(&ratio(1, 5))
            );
            assert!(s5.is_none());
        }
        let t = a.terms(40).unwrap().terms;
        assert!(verify_series_relation(&rel, &t, 25));
        // F(0) = 0, so a(n) = 0 for n ≥ 1.
        assert_eq!(rel.constant, Polynomial::one());
    }

    #[test]
    fn shifted_fibonacci_coefficient() {
        let a = first_order(CFiniteSeq::fibonacci().shift(1));
        let rel = xrecursive_first_order_funceq(&a).unwrap();
        let t = a.terms(40).unwrap().terms;
        assert_eq!(t[..6], [1, 1, 2, 6, 30, 240].map(rat));
        assert!(verify_series_relation(&rel, &t, 30));
    }

    #[test]
    fn constant_coefficient() {
        let a = first_order(CFiniteSeq::constant(rat(2)));
        let rel = xrecursive_first_order_funceq(&a).unwrap();
        assert_eq!(rel.to_string(), "f(x) = 2xf(x) + 1");
        // Cross-check with 1/(1-2x).
        let g: Vec<_> = (0..30).map(|n| rat(2).pow(n)).collect();
        assert!(verify_series_relation(&rel, &g, 25));
    }

    #[test]
    fn rejects_unsupported_shapes() {
        // An irreducible quartic.
        let c = CFiniteSeq::from_ints(&[1, 0, -4, 0, 1], &[1, 2, 3, 4]).unwrap();
        let err = xrecursive_first_order_funceq(&first_order(c)).unwrap_err();
        assert!(matches!(err, GenfuncError::UnsupportedCoefficientShape(_)));
        // Repeated irrational roots: (t² - t - 1)².
        let c = CFiniteSeq::from_ints(&[1, -2, -1, 2, 1], &[0, 0, 0, 1]).unwrap();
        let err = xrecursive_first_order_funceq(&first_order(c)).unwrap_err();
        assert!(matches!(err, GenfuncError::UnsupportedCoefficientShape(ref s) if s.contains("repeated")));
    }
}
