//! Direct evaluators for a few sequences outside the linear ansätze. They
//! serve as data sources and oracles.

use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, rat, ratio, Rational};

use super::{SeqError, TermVector};

/// `a(n)a(n+1)a(n+3) = a(n)a(n+2)² + a(n+2)a(n+1)²` with `a(0) = a(1) = 1`,
/// `a(2) = 2`.
pub fn somos2014_terms(count: usize) -> Result<TermVector, SeqError> {
    let mut a: Vec<Rational> = [1, 1, 2].iter().take(count).map(|&v| rat(v)).collect();
    while a.len() < count {
        let n = a.len() - 3;
        let den = &a[n] * &a[n + 1];
        if den.is_zero() {
            return Err(SeqError::DivisionByZeroInRecurrence(n + 3));
        }
        let num = &a[n] * &a[n + 2] * &a[n + 2] + &a[n + 2] * &a[n + 1] * &a[n + 1];
        a.push(num / den);
    }
    Ok(TermVector::from_zero(a))
}

/// `b(n+1) = Σ_{j≤n} C(n,j) b(j)`, `b(0) = 1`: the Bell numbers.
pub fn bell_like_terms(count: usize) -> TermVector {
    let mut b: Vec<Rational> = Vec::with_capacity(count);
    if count > 0 {
        b.push(Rational::one());
    }
    while b.len() < count {
        let n = b.len() as u64 - 1;
        let s = (0..=n).fold(Rational::zero(), |acc, j| acc + binomial(n, j) * &b[j as usize]);
        b.push(s);
    }
    TermVector::from_zero(b)
}

/// `a(n) = -Σ_{j<n} a(j)/(n+1-j)!`, `a(0) = 1`: coefficients of `x/(eˣ-1)`.
pub fn bernoulli_coeff_terms(count: usize) -> TermVector {
    let mut a: Vec<Rational> = Vec::with_capacity(count);
    if count > 0 {
        a.push(Rational::one());
    }
    while a.len() < count {
        let n = a.len();
        let s = (0..n).fold(Rational::zero(), |acc, j| {
            acc + &a[j] / factorial((n + 1 - j) as u64)
        });
        a.push(-s);
    }
    TermVector::from_zero(a)
}

/// Coefficients of `tan x` from `f = sin(x)cos(x)f′`:
/// `(1-n)a(n) = Σ_{j=1}^{n-1} j·c(n-j+1)·a(j)` with `a(0) = 0`, `a(1) = 1`,
/// where `c(j) = -4c(j-2)/(j(j-1))`, `c(0) = 0`, `c(1) = 1` are the
/// coefficients of `sin(x)cos(x)`.
pub fn tangent_coeff_terms(count: usize) -> TermVector {
    let mut c: Vec<Rational> = vec![Rational::zero(), Rational::one()];
    for j in 2..=count.max(2) {
        let v = ratio(-4, (j * (j - 1)) as i64) * &c[j - 2];
        c.push(v);
    }
    let mut a: Vec<Rational> = [0, 1].iter().take(count).map(|&v| rat(v)).collect();
    while a.len() < count {
        let n = a.len();
        let s = (1..n).fold(Rational::zero(), |acc, j| {
            acc + rat(j as i64) * &c[n - j + 1] * &a[j]
        });
        a.push(s / rat(1 - n as i64));
    }
    TermVector::from_zero(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn somos_prefix_and_fibonacci_ratios() {
        let t = somos2014_terms(10).unwrap();
        let expect = [1i64, 1, 2, 6, 30, 240, 3120, 65520, 2227680, 122522400];
        assert_eq!(t.terms, expect.map(rat).to_vec());
        assert_eq!(somos2014_terms(3).unwrap().terms, [1, 1, 2].map(rat).to_vec());
        let long = somos2014_terms(30).unwrap();
        let (mut f0, mut f1) = (rat(1), rat(1)); // F₁, F₂
        for n in 1..30 {
            assert_eq!(&long.terms[n] / &long.terms[n - 1], f1);
            let next = &f0 + &f1;
            f0 = std::mem::replace(&mut f1, next);
        }
    }

    #[test]
    fn bell_against_stirling() {
        // Oracle: Bell(n) = Σ_k S(n,k) with S(n,k) = k·S(n-1,k) + S(n-1,k-1).
        let n_max = 15;
        let mut s = vec![vec![0u128; n_max + 1]; n_max + 1];
        s[0][0] = 1;
        for n in 1..=n_max {
            for k in 1..=n {
                s[n][k] = k as u128 * s[n - 1][k] + s[n - 1][k - 1];
            }
        }
        let b = bell_like_terms(n_max + 1);
        for n in 0..=n_max {
            let bell: u128 = s[n].iter().sum();
            assert_eq!(b.terms[n], rat(bell as i64));
        }
        assert_eq!(bell_like_terms(7).terms, [1, 1, 2, 5, 15, 52, 203].map(rat).to_vec());
    }

    #[test]
    fn bernoulli_against_series_inverse() {
        // Oracle: invert (eˣ-1)/x = Σ xᵏ/(k+1)! as a power series.
        let n = 16;
        let g: Vec<Rational> = (0..n).map(|k| Rational::one() / factorial(k as u64 + 1)).collect();
        let mut inv = vec![Rational::one()];
        for m in 1..n {
            let s = (1..=m).fold(Rational::zero(), |acc, k| acc + &g[k] * &inv[m - k]);
            inv.push(-s);
        }
        assert_eq!(bernoulli_coeff_terms(n).terms, inv);
        let t = bernoulli_coeff_terms(3);
        assert_eq!(t.terms, vec![rat(1), ratio(-1, 2), ratio(1, 12)]);
    }

    #[test]
    fn tangent_against_sin_over_cos() {
        // Oracle: tan = sin/cos by power series division.
        let n = 16;
        let sin: Vec<Rational> = (0..n)
            .map(|k| match k % 4 {
                1 => Rational::one() / factorial(k as u64),
                3 => -Rational::one() / factorial(k as u64),
                _ => Rational::zero(),
            })
            .collect();
        let cos: Vec<Rational> = (0..n)
            .map(|k| match k % 4 {
                0 => Rational::one() / factorial(k as u64),
                2 => -Rational::one() / factorial(k as u64),
                _ => Rational::zero(),
            })
            .collect();
        let mut q: Vec<Rational> = Vec::new();
        for m in 0..n {
            let s = (1..=m).fold(Rational::zero(), |acc, k| acc + &cos[k] * &q[m - k]);
            q.push(&sin[m] - s);
        }
        assert_eq!(tangent_coeff_terms(n).terms, q);
        let t = tangent_coeff_terms(6);
        let expect = vec![rat(0), rat(1), rat(0), ratio(1, 3), rat(0), ratio(2, 15)];
        assert_eq!(t.terms, expect);
    }
}
