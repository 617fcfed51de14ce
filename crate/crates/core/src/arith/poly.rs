//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{binomial, common_denominator, from_bigint, numerator_gcd, rat, Rational};

/// Coefficients are stored constant term first with no trailing zeros, so the
/// zero polynomial is the empty vector and `degree()` of it is `-1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x + shift`.
    pub fn linear(shift: Rational) -> Self {
        Self::new(vec![shift, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Polynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * other) + &Self::constant(c.clone()))
    }

    /// The polynomial `n ↦ p(n + m)`.
    pub fn shift(&self, m: i64) -> Self {
        if m == 0 || self.is_constant() {
            return self.clone();
        }
        // Taylor shift: coefficient k of p(n+m) is sum_{i>=k} c_i C(i,k) m^(i-k).
        let d = self.coeffs.len();
        let m = rat(m);
        let mut powers = Vec::with_capacity(d);
        let mut acc = Rational::one();
        for _ in 0..d {
            powers.push(acc.clone());
            acc *= &m;
        }
        let coeffs = (0..d)
            .map(|k| {
                (k..d).fold(Rational::zero(), |s, i| {
                    s + &self.coeffs[i] * binomial(i as u64, k as u64) * &powers[i - k]
                })
            })
            .collect();
        Self::new(coeffs)
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (Self::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd - 1);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            // Keep intermediate coefficients small.
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() <= 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient. The zero polynomial is returned unchanged.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let factor = content_factor(self.coeffs.iter());
        let p = self.scale(&factor);
        if p.leading().is_negative() {
            -&p
        } else {
            p
        }
    }

    /// Integer coefficients when the polynomial has them.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// All rational roots with multiplicity, via the rational root theorem on
    /// the primitive part. Intended for the small polynomials this crate
    /// factors; the divisor enumeration is exponential in the size of the
    /// extreme coefficients.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let mut p = self.primitive_part();
        let mut roots = Vec::new();
        if p.degree() <= 0 {
            return roots;
        }
        let mut zero_mult = 0;
        while p.coeff(0).is_zero() {
            p = Self::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        if p.degree() <= 0 {
            return roots;
        }
        let ints = p.integer_coeffs().expect("primitive part is integral");
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let Some(num_divs) = small_divisors(&constant) else {
            return roots;
        };
        let Some(den_divs) = small_divisors(&lead) else {
            return roots;
        };
        let mut candidates = Vec::new();
        for n in &num_divs {
            for d in &den_divs {
                for sign in [1i64, -1] {
                    let r = Rational::new(n * BigInt::from(sign), d.clone());
                    if !candidates.contains(&r) {
                        candidates.push(r);
                    }
                }
            }
        }
        candidates.sort();
        for r in candidates {
            let lin = Self::linear(-r.clone());
            let mut mult = 0;
            while let Some(q) = p.div_exact(&lin) {
                p = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        roots
    }

    /// Integer roots (without multiplicity), ascending.
    pub fn integer_roots(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .rational_roots()
            .into_iter()
            .filter(|(r, _)| r.is_integer())
            .filter_map(|(r, _)| r.to_integer().to_i64())
            .collect();
        out.sort_unstable();
        out
    }

    /// Falling factorial `x(x-1)…(x-k+1)`.
    pub fn falling_factorial(k: usize) -> Polynomial {
        (0..k).fold(Self::one(), |acc, i| &acc * &Self::linear(rat(-(i as i64))))
    }

    /// Coefficients `e_j` with `self(x) = Σ e_j · x(x-1)…(x-j+1)`.
    pub fn to_falling_factorial_basis(&self) -> Vec<Rational> {
        let mut rest = self.clone();
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for j in (0..self.coeffs.len()).rev() {
            let c = rest.coeff(j);
            if !c.is_zero() {
                rest = &rest - &Self::falling_factorial(j).scale(&c);
            }
            out[j] = c;
        }
        out
    }

    /// Renders with the given variable name, highest degree first, e.g.
    /// `2x^2-3x+1`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else if abs.is_integer() {
                out.push_str(&format!("{abs}{mono}"));
            } else {
                out.push_str(&format!("({abs}){mono}"));
            }
        }
        out
    }

    /// Number of terms with a nonzero coefficient.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Positive rational `f` such that `f·values` are coprime integers.
pub fn content_factor<'a>(values: impl Iterator<Item = &'a Rational> + Clone) -> Rational {
    let den = common_denominator(values.clone());
    let scaled: Vec<Rational> = values.map(|v| v * from_bigint(den.clone())).collect();
    let g = numerator_gcd(scaled.iter());
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(den, g)
}

/// Positive divisors of `n`, or `None` when `n` is too large to enumerate.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 2_000_000 {
            return None;
        }
    }
    Some(out)
}

/// Integer content gcd of a list of big integers (non-negative).
pub fn bigint_gcd(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.display_with("x"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn canonical_zero() {
        let z = Polynomial::new(vec![rat(0), rat(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), -1);
        assert_eq!(z.coeffs().len(), 0);
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
    }

    #[test]
    fn shift_examples() {
        // n^2 shifted by 1
        assert_eq!(p(&[0, 0, 1]).shift(1), p(&[1, 2, 1]));
        assert_eq!(p(&[0, 1]).shift(-1), p(&[-1, 1]));
        let q = p(&[-1, 2]).shift(2);
        assert_eq!(q, p(&[3, 2]));
        for x in -2..3 {
            assert_eq!(q.eval_int(x), p(&[-1, 2]).eval_int(x + 2));
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn roots_and_display() {
        let q = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 2]);
        let roots = q.rational_roots();
        assert!(roots.contains(&(rat(1), 2)));
        assert!(roots.contains(&(ratio(-1, 2), 1)));
        assert_eq!(p(&[1, -3, 2]).to_string(), "2x^2-3x+1");
        assert_eq!(Polynomial::new(vec![ratio(1, 2), rat(-1)]).to_string(), "-x+1/2");
        assert_eq!(p(&[2, -3]).primitive_part(), p(&[-2, 3]));
    }

    #[test]
    fn falling_factorial_basis() {
        let q = p(&[2, 1]); // n + 2 = ff1 + 2
        assert_eq!(q.to_falling_factorial_basis(), vec![rat(2), rat(1)]);
        let sq = p(&[0, 0, 1]); // n^2 = n(n-1) + n
        assert_eq!(sq.to_falling_factorial_basis(), vec![rat(0), rat(1), rat(1)]);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(-20i64..20, 0..6).prop_map(|c| Polynomial::from_ints(&c))
    }

    proptest! {
        #[test]
        fn shift_composes(q in arb_poly(), a in -5i64..=5, b in -5i64..=5) {
            prop_assert_eq!(q.shift(a).shift(b), q.shift(a + b));
        }

        #[test]
        fn canonical_form_idempotent(c in proptest::collection::vec(-5i64..5, 0..6)) {
            let once = Polynomial::from_ints(&c);
            let twice = Polynomial::new(once.coeffs().to_vec());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert!(r.degree() < b.degree());
            prop_assert_eq!(&(&q * &b) + &r, a);
        }
    }
}
