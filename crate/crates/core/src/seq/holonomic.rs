use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{content_factor, lift_to_integers, Polynomial, Rational};

use super::{render_linear_terms, SeqError, TermVector};

/// `p₀(n)a(n) + p₁(n)a(n-1) + … + p_k(n)a(n-k) = 0` for every `n ≥ offset`.
///
/// The sequence is defined from index `start`; `initials` holds
/// `a(start) … a(offset-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomicSeq {
    pub polys: Vec<Polynomial>,
    pub initials: Vec<Rational>,
    pub start: usize,
    pub offset: usize,
}

impl HolonomicSeq {
    /// Validates the shape and that `p₀` has no integer root at or past the
    /// offset.
    pub fn new(
        polys: Vec<Polynomial>,
        initials: Vec<Rational>,
        start: usize,
        offset: usize,
    ) -> Result<Self, SeqError> {
        if polys.is_empty() || polys[0].is_zero() {
            return Err(SeqError::Invalid("leading polynomial must be nonzero".into()));
        }
        let k = polys.len() - 1;
        if offset < start + k {
            return Err(SeqError::Invalid(format!(
                "offset {offset} is below start + order = {}",
                start + k
            )));
        }
        if initials.len() != offset - start {
            return Err(SeqError::Invalid(format!(
                "expected {} initial terms for indices {start}..{offset}, got {}",
                offset - start,
                initials.len()
            )));
        }
        if let Some(root) = polys[0]
            .integer_roots()
            .into_iter()
            .find(|r| *r >= offset as i64)
        {
            return Err(SeqError::LeadingCoefficientVanishes(root as usize));
        }
        Ok(HolonomicSeq {
            polys,
            initials,
            start,
            offset,
        })
    }

    /// The recurrence alone with initial terms taken from `data`, starting
    /// at the smallest admissible offset.
    pub fn from_data(polys: Vec<Polynomial>, data: &TermVector) -> Result<Self, SeqError> {
        let k = polys.len().saturating_sub(1);
        let mut offset = data.start + k;
        if let Some(r) = polys.first().and_then(|p| p.integer_roots().into_iter().max()) {
            if r >= offset as i64 {
                offset = r as usize + 1;
            }
        }
        if offset > data.end() {
            return Err(SeqError::Invalid("not enough data for the initial terms".into()));
        }
        let initials = data.terms[..offset - data.start].to_vec();
        Self::new(polys, initials, data.start, offset)
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn degree(&self) -> isize {
        self.polys.iter().map(Polynomial::degree).max().unwrap_or(-1)
    }

    /// `count` terms from index `start`.
    pub fn terms(&self, count: usize) -> Result<TermVector, SeqError> {
        // Fraction-free: the window holds numerators over the common
        // denominator `den`, which absorbs each leading coefficient.
        let k = self.order();
        let mut out: Vec<Rational> = self.initials.iter().take(count).cloned().collect();
        let ops = IntegerOperator::new(&self.polys);
        let (mut den, mut window) = lift_to_integers(&out);
        let mut steps = 0usize;
        while out.len() < count {
            let n = self.start + out.len();
            let c = ops.at(n);
            if c[0].is_zero() {
                return Err(SeqError::LeadingCoefficientVanishes(n));
            }
            let len = window.len();
            let mut s = BigInt::zero();
            for i in 1..=k {
                if !c[i].is_zero() {
                    s += &c[i] * &window[len - i];
                }
            }
            let lead = c[0].abs();
            let next = if c[0].is_negative() { s } else { -s };
            for w in window.iter_mut() {
                *w *= &lead;
            }
            den *= &lead;
            out.push(Rational::new(next.clone(), den.clone()));
            window.push(next);
            if window.len() > k {
                window.drain(..window.len() - k);
            }
            steps += 1;
            if steps % 16 == 0 {
                let g = window.iter().fold(den.clone(), |g, w| g.gcd(w));
                if !g.is_one() {
                    den /= &g;
                    for w in window.iter_mut() {
                        *w /= &g;
                    }
                }
            }
        }
        Ok(TermVector::new(self.start, out))
    }

    /// Value of the operator applied to `data` at index `n`.
    pub fn residual(&self, data: &TermVector, n: usize) -> Rational {
        residual(&self.polys, data, n)
    }

    /// Whether the recurrence holds at every index of `data` where it is
    /// asserted and all its terms are available.
    pub fn annihilates(&self, data: &TermVector) -> bool {
        annihilates_from(&self.polys, data, self.offset)
    }

    /// `n*a(n) - (2n-1)*a(n-1) + (n-1)*a(n-2) = 0`.
    pub fn recurrence_string(&self) -> String {
        render_poly_recurrence(&self.polys)
    }
}

/// Scales an operator to coprime integer coefficients with the leading
/// coefficient of `p₀` positive.
pub fn normalize_operator(polys: &[Polynomial]) -> Vec<Polynomial> {
    let factor = content_factor(polys.iter().flat_map(|p| p.coeffs().iter()));
    let sign = match polys.iter().find(|p| !p.is_zero()) {
        Some(p) if p.leading().is_negative() => -factor,
        _ => factor,
    };
    polys.iter().map(|p| p.scale(&sign)).collect()
}

/// `Σ pᵢ(n)·data(n-i)`.
pub fn residual(polys: &[Polynomial], data: &TermVector, n: usize) -> Rational {
    let mut s = Rational::zero();
    for (i, p) in polys.iter().enumerate() {
        if !p.is_zero() {
            s += p.eval_int(n as i64) * data.at(n - i);
        }
    }
    s
}

pub(crate) fn annihilates_from(polys: &[Polynomial], data: &TermVector, from: usize) -> bool {
    let k = polys.len() - 1;
    failures(polys, data, from.max(data.start + k)).is_empty()
}

/// Indices `n ≥ from` in `data` where the recurrence fails, computed over
/// a common denominator.
pub fn failures(polys: &[Polynomial], data: &TermVector, from: usize) -> Vec<usize> {
    let k = polys.len() - 1;
    let (_, ints) = lift_to_integers(&data.terms);
    let ops = IntegerOperator::new(polys);
    (from.max(data.start + k)..data.end())
        .filter(|&n| {
            let c = ops.at(n);
            let base = n - data.start;
            let s = c
                .iter()
                .enumerate()
                .filter(|(_, ci)| !ci.is_zero())
                .fold(BigInt::zero(), |acc, (i, ci)| acc + ci * &ints[base - i]);
            !s.is_zero()
        })
        .collect()
}

/// The operator scaled by a positive constant to integer coefficients.
struct IntegerOperator(Vec<Vec<BigInt>>);

impl IntegerOperator {
    fn new(polys: &[Polynomial]) -> Self {
        let all: Vec<Rational> = polys.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
        let mut ints = lift_to_integers(&all).1.into_iter();
        IntegerOperator(polys.iter().map(|p| ints.by_ref().take(p.coeffs().len()).collect()).collect())
    }

    /// `p_i(n)` for every `i`.
    fn at(&self, n: usize) -> Vec<BigInt> {
        let x = BigInt::from(n);
        self.0
            .iter()
            .map(|c| c.iter().rev().fold(BigInt::zero(), |acc, ci| acc * &x + ci))
            .collect()
    }
}

pub(crate) fn render_poly_recurrence(polys: &[Polynomial]) -> String {
    let mut coeffs = Vec::new();
    let mut negs = Vec::new();
    for p in polys {
        if p.is_zero() {
            coeffs.push(String::new());
            negs.push(false);
            continue;
        }
        let neg = p.leading().is_negative();
        let q = if neg { -p.clone() } else { p.clone() };
        let body = q.display_with("n");
        let c = if q.is_one() {
            "1".to_string()
        } else if q.is_constant() {
            body
        } else if q.term_count() == 1 {
            format!("{body}*")
        } else {
            format!("({body})*")
        };
        coeffs.push(c);
        negs.push(neg);
    }
    format!("{} = 0", render_linear_terms(&coeffs, &negs))
}

impl fmt::Display for HolonomicSeq {
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
