//! Arbitrary-precision rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator. This module adds the small
//! constructors and parsing helpers the rest of the crate leans on.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"17"`, `"-3/4"`, `"+5"`; surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let t = text.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let err = || ParseRationalError(text.to_string());
    if t.is_empty() {
        return Err(err());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t).map(from_bigint).map_err(|_| err()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, ParseRationalError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Binomial coefficient `C(n, k)` as a rational; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    from_bigint(acc)
}

pub fn factorial(n: u64) -> Rational {
    from_bigint((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// Integer power with a possibly negative exponent. `0^negative` panics.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp < 0 {
        assert!(!base.is_zero(), "zero raised to a negative power");
        return pow(&base.recip(), -exp);
    }
    let mut result = Rational::one();
    let mut b = base.clone();
    let mut e = exp as u64;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the numerators (non-negative).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
        .abs()
}

/// `(D, [v·D])` with `D` the least common denominator of `values`.
pub fn lift_to_integers(values: &[Rational]) -> (BigInt, Vec<BigInt>) {
    use num_integer::Integer;
    // Later terms of a sequence usually have the larger denominators, and
    // a divisibility test is much cheaper than a gcd.
    let mut den = BigInt::one();
    for v in values.iter().rev() {
        let d = v.denom();
        if d.is_one() || den.is_multiple_of(d) {
            continue;
        }
        den = den.lcm(d);
    }
    let ints = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    (den, ints)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("17").unwrap(), rat(17));
        assert_eq!(parse_rational(" -3/4 ").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("+5").unwrap(), rat(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = ratio(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(ratio(0, -5).denom(), &BigInt::one());
    }

    #[test]
    fn binomials_and_powers() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(2, 5), rat(0));
        assert_eq!(factorial(5), rat(120));
        assert_eq!(pow(&rat(2), 10), rat(1024));
        assert_eq!(pow(&rat(2), -2), ratio(1, 4));
    }
}
