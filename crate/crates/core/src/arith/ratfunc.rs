//! Univariate rational functions over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{content_factor, Polynomial};
use super::rational::Rational;

/// `numerator / denominator` in lowest terms. Both parts carry integer
/// coefficients whose joint content is 1 and the denominator's leading
/// coefficient is positive, so equal functions have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let mut factor =
            content_factor(num.coeffs().iter().chain(den.coeffs().iter()));
        if den.leading().is_negative() {
            factor = -factor;
        }
        RationalFunction {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::new(p, Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `n ↦ f(n + m)`.
    pub fn shift(&self, m: i64) -> Self {
        Self::new(self.num.shift(m), self.den.shift(m))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Power series coefficients `c_0..c_{count-1}`; requires `den(0) != 0`.
    pub fn series(&self, count: usize) -> Vec<Rational> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "series expansion at a pole");
        let inv = d0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for n in 0..count {
            let mut s = self.num.coeff(n);
            for k in 1..=n.min(self.den.coeffs().len().saturating_sub(1)) {
                s -= self.den.coeff(k) * &out[n - k];
            }
            out.push(s * &inv);
        }
        out
    }
}

/// Multiplies by the lcm of the denominators and removes the common
/// polynomial factor of the result.
pub fn clear_denominators(x: &[RationalFunction]) -> Vec<Polynomial> {
    let mut lcm = Polynomial::one();
    for c in x {
        let d = c.denominator();
        let g = lcm.gcd(d);
        lcm = (&lcm * d).div_exact(&g).expect("gcd divides");
    }
    let polys: Vec<Polynomial> = x
        .iter()
        .map(|c| c.numerator() * &lcm.div_exact(c.denominator()).expect("denominator divides lcm"))
        .collect();
    let g = polys
        .iter()
        .filter(|p| !p.is_zero())
        .fold(Polynomial::zero(), |acc, p| if acc.is_zero() { p.monic() } else { acc.gcd(p) });
    if g.degree() > 0 {
        polys.iter().map(|p| p.div_exact(&g).expect("common factor")).collect()
    } else {
        polys
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, num) = if self.num.leading().is_negative() && self.num.term_count() > 1 {
            (true, -&self.num)
        } else {
            (false, self.num.clone())
        };
        let wrap = |p: &Polynomial| {
            if p.term_count() > 1 {
                format!("({})", p.display_with("x"))
            } else {
                p.display_with("x")
            }
        };
        if self.den.is_one() {
            return write!(f, "{}", self.num.display_with("x"));
        }
        if neg {
            write!(f, "-{}/{}", wrap(&num), wrap(&self.den))
        } else {
            write!(f, "{}/{}", wrap(&num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn normalization() {
        // (2x-2)/(2x^2-2) = 1/(x+1)
        let f = RationalFunction::new(p(&[-2, 2]), p(&[-2, 0, 2]));
        assert_eq!(f.numerator(), &p(&[1]));
        assert_eq!(f.denominator(), &p(&[1, 1]));
        // sign moves to the numerator
        let g = RationalFunction::new(p(&[-2, 3]), p(&[-1, 3, -2]));
        assert_eq!(g.denominator().leading(), rat(2));
        assert_eq!(g.to_string(), "-(3x-2)/(2x^2-3x+1)");
    }

    #[test]
    fn field_laws_and_series() {
        let a = RationalFunction::new(p(&[1]), p(&[1, -1]));
        let b = RationalFunction::new(p(&[0, 1]), p(&[1, -1, -1]));
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.series(4), vec![rat(1), rat(1), rat(1), rat(1)]);
        assert_eq!(b.series(7), [0, 1, 1, 2, 3, 5, 8].map(rat).to_vec());
        assert_eq!(a.eval(&rat(1)), None);
    }
}
