use crate::arith::{rat, Polynomial, Rational};

use super::{CFiniteSeq, TermVector};

/// A sequence given by a polynomial in the index, `a(n) = p(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeq {
    pub poly: Polynomial,
}

impl PolySeq {
    pub fn new(poly: Polynomial) -> Self {
        PolySeq { poly }
    }

    pub fn degree(&self) -> isize {
        self.poly.degree()
    }

    pub fn term(&self, n: usize) -> Rational {
        self.poly.eval_int(n as i64)
    }

    pub fn terms(&self, count: usize) -> TermVector {
        TermVector::from_zero((0..count).map(|n| self.term(n)).collect())
    }

    /// The annihilator `(N-1)^(d+1)` in monic backward form, i.e. the
    /// coefficients of `(1-x)^(d+1)`.
    pub fn annihilator(&self) -> Vec<Rational> {
        let k = (self.degree() + 1).max(0) as u32;
        Polynomial::new(vec![rat(1), rat(-1)]).pow(k).into_coeffs()
    }

    /// The same sequence as a C-finite sequence of order `degree + 1`.
    pub fn to_cfinite(&self) -> CFiniteSeq {
        let ann = self.annihilator();
        let k = ann.len() - 1;
        let init = (0..k).map(|n| self.term(n)).collect();
        CFiniteSeq::new(ann, init).expect("binomial annihilator is monic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_quadratic() {
        let p = PolySeq::new(Polynomial::from_ints(&[0, -2, 1]));
        assert_eq!(p.terms(3).terms, vec![rat(0), rat(-1), rat(0)]);
        assert_eq!(p.annihilator(), vec![rat(1), rat(-3), rat(3), rat(-1)]);
        let c = p.to_cfinite();
        assert_eq!(c.terms(20), p.terms(20).terms);
    }
}
