use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

use super::{render_linear_terms, CFiniteSeq, SeqError, TermVector};

/// `C₀(n)a(n) + C₁(n)a(n-1) + … + C_k(n)a(n-k) = 0` for every `n ≥ offset`,
/// where each `C_i` is a C-finite sequence read at the absolute index `n`.
///
/// `initials` holds `a(start) … a(offset-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XRecursiveSeq {
    pub coeffs: Vec<CFiniteSeq>,
    pub initials: Vec<Rational>,
    pub start: usize,
    pub offset: usize,
}

impl XRecursiveSeq {
    pub fn new(
        coeffs: Vec<CFiniteSeq>,
        initials: Vec<Rational>,
        start: usize,
        offset: usize,
    ) -> Result<Self, SeqError> {
        if coeffs.len() < 2 {
            return Err(SeqError::Invalid("order must be at least 1".into()));
        }
        if coeffs[0].is_zero() {
            return Err(SeqError::Invalid("leading coefficient is the zero sequence".into()));
        }
        let k = coeffs.len() - 1;
        if offset < start + k {
            return Err(SeqError::Invalid(format!(
                "offset {offset} is below start + order = {}",
                start + k
            )));
        }
        if initials.len() != offset - start {
            return Err(SeqError::Invalid(format!(
                "expected {} initial terms, got {}",
                offset - start,
                initials.len()
            )));
        }
        Ok(XRecursiveSeq {
            coeffs,
            initials,
            start,
            offset,
        })
    }

    /// The common case: indexed from 0, relation valid from `n = k`.
    pub fn from_zero(coeffs: Vec<CFiniteSeq>, initials: Vec<Rational>) -> Result<Self, SeqError> {
        let k = initials.len();
        Self::new(coeffs, initials, 0, k)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `count` terms from index `start`.
    pub fn terms(&self, count: usize) -> Result<TermVector, SeqError> {
        let k = self.order();
        let end = self.start + count;
        let coeff_terms: Vec<Vec<Rational>> = self.coeffs.iter().map(|c| c.terms(end)).collect();
        let mut out: Vec<Rational> = self.initials.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = self.start + out.len();
            let lead = &coeff_terms[0][n];
            if lead.is_zero() {
                return Err(SeqError::LeadingCoefficientVanishes(n));
            }
            let mut s = Rational::zero();
            for i in 1..=k {
                let c = &coeff_terms[i][n];
                if !c.is_zero() {
                    s += c * &out[out.len() - i];
                }
            }
            out.push(-s / lead);
        }
        Ok(TermVector::new(self.start, out))
    }

    pub fn residual(&self, data: &TermVector, n: usize) -> Rational {
        let mut s = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            s += c.term(n) * data.at(n - i);
        }
        s
    }

    /// Whether the relation holds at every index of `data` from the offset
    /// on where all its terms are available.
    pub fn annihilates(&self, data: &TermVector) -> bool {
        annihilates_from(&self.coeffs, data, self.offset)
    }

    /// `a(n) - C[1,-1,-1; 1,2]a(n-1) = 0` style rendering.
    pub fn recurrence_string(&self) -> String {
        let mut coeffs = Vec::new();
        let mut negs = Vec::new();
        for c in &self.coeffs {
            let c = c.minimize();
            if c.is_zero() {
                coeffs.push(String::new());
                negs.push(false);
                continue;
            }
            // Show a leading minus when the first nonzero term is negative.
            let neg = c
                .terms(c.order() + 1)
                .iter()
                .find(|t| !t.is_zero())
                .is_some_and(|t| t.is_negative());
            let shown = if neg { c.neg() } else { c };
            let desc = shown.describe();
            let constant = shown.order() == 1 && shown.annihilator()[1] == -Rational::one();
            let text = if constant && shown.initials()[0].is_integer() {
                desc
            } else {
                format!("[{desc}]")
            };
            coeffs.push(text);
            negs.push(neg);
        }
        format!("{} = 0", render_linear_terms(&coeffs, &negs))
    }
}

pub(crate) fn annihilates_from(coeffs: &[CFiniteSeq], data: &TermVector, from: usize) -> bool {
    let k = coeffs.len() - 1;
    let lo = from.max(data.start + k);
    if lo >= data.end() {
        return true;
    }
    let ct: Vec<Vec<Rational>> = coeffs.iter().map(|c| c.terms(data.end())).collect();
    (lo..data.end()).all(|n| {
        let mut s = Rational::zero();
        for (i, c) in ct.iter().enumerate() {
            if !c[n].is_zero() {
                s += &c[n] * data.at(n - i);
            }
        }
        s.is_zero()
    })
}

impl fmt::Display for XRecursiveSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let init: Vec<String> = self.initials.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} for n >= {}, a({}..{}) = [{}]",
            self.recurrence_string(),
            self.offset,
            self.start,
            self.offset,
            init.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn power_of_two_coefficient() {
        // a(n) = a(n-1) + 2ⁿa(n-2)
        let one = CFiniteSeq::constant(rat(1));
        let x = XRecursiveSeq::from_zero(
            vec![one.clone(), one.neg(), CFiniteSeq::geometric(rat(-1), rat(2))],
            vec![rat(1), rat(1)],
        )
        .unwrap();
        let t = x.terms(5).unwrap();
        assert_eq!(t.terms, [1, 1, 5, 13, 93].map(rat).to_vec());
        // Oracle: direct recursion with integer arithmetic.
        let mut o: Vec<i128> = vec![1, 1];
        for n in 2..12 {
            o.push(o[n - 1] + (1i128 << n) * o[n - 2]);
        }
        let t = x.terms(12).unwrap();
        for (a, b) in t.terms.iter().zip(&o) {
            assert_eq!(*a, rat(*b as i64));
        }
        assert!(x.annihilates(&t));
        assert_eq!(x.recurrence_string(), "a(n) - a(n-1) - [2^n]a(n-2) = 0");
    }

    #[test]
    fn vanishing_leading_coefficient() {
        // C₀(n) = (-1)ⁿ - 1 vanishes at every even n.
        let c0 = CFiniteSeq::from_ints(&[1, 0, -1], &[0, -2]).unwrap();
        let x = XRecursiveSeq::from_zero(vec![c0, CFiniteSeq::constant(rat(1))], vec![rat(1)])
            .unwrap();
        assert_eq!(x.terms(4).unwrap_err(), SeqError::LeadingCoefficientVanishes(2));
    }
}
