use crate::arith::Rational;
use crate::seq::CFiniteSeq;

use super::{verification_length, ClosureError, ClosureReport};

fn check(
    result: CFiniteSeq,
    bound: usize,
    oracle: impl Fn(usize) -> Vec<Rational>,
) -> Result<ClosureReport<CFiniteSeq>, ClosureError> {
    if result.order() > bound {
        return Err(ClosureError::VerificationFailed(format!(
            "order {} exceeds the bound {bound}",
            result.order()
        )));
    }
    let n = verification_length(bound);
    let expected = oracle(n);
    if result.terms(n) != expected || !result.annihilates(&expected) {
        return Err(ClosureError::VerificationFailed(
            "terms differ from the termwise oracle".into(),
        ));
    }
    Ok(ClosureReport {
        result,
        claimed_order_bound: bound,
        verified_terms: n,
    })
}

/// Termwise sum; order at most `r + s`.
pub fn cfinite_add(a: &CFiniteSeq, b: &CFiniteSeq) -> Result<ClosureReport<CFiniteSeq>, ClosureError> {
    check(a.add(b), a.order() + b.order(), |n| {
        a.terms(n).iter().zip(b.terms(n)).map(|(x, y)| x + y).collect()
    })
}

/// Termwise product; order at most `r·s`.
pub fn cfinite_mul(a: &CFiniteSeq, b: &CFiniteSeq) -> Result<ClosureReport<CFiniteSeq>, ClosureError> {
    check(a.mul(b), a.order() * b.order(), |n| {
        a.terms(n).iter().zip(b.terms(n)).map(|(x, y)| x * y).collect()
    })
}

/// `Σ_{j≤n} a(j)`; order at most `r + 1`.
pub fn cfinite_partial_sum(a: &CFiniteSeq) -> Result<ClosureReport<CFiniteSeq>, ClosureError> {
    check(a.partial_sum(), a.order() + 1, |n| {
        let mut acc = Rational::from_integer(0.into());
        a.terms(n)
            .into_iter()
            .map(|v| {
                acc += v;
                acc.clone()
            })
            .collect()
    })
}

/// `a(m·n + r)`; order at most that of `a`.
pub fn cfinite_multisection(
    a: &CFiniteSeq,
    m: usize,
    r: usize,
) -> Result<ClosureReport<CFiniteSeq>, ClosureError> {
    if m == 0 {
        return Err(ClosureError::Seq(crate::seq::SeqError::Invalid(
            "multisection modulus must be positive".into(),
        )));
    }
    check(a.multisection(m, r), a.order(), |n| {
        let all = a.terms(m * n + r);
        (0..n).map(|i| all[m * i + r].clone()).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::guess::{guess_cfinite, GuessConfig};
    use crate::seq::TermVector;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn fibonacci_closures() {
        let f = CFiniteSeq::fibonacci();
        let two = CFiniteSeq::geometric(rat(1), rat(2));
        let s = cfinite_add(&f, &two).unwrap();
        assert!(s.result.order() <= 3);
        let sq = cfinite_mul(&f, &f).unwrap();
        assert_eq!(sq.result.order(), 3);
        // Re-guess oracle on squared terms.
        let squares: Vec<Rational> = f.terms(16).iter().map(|v| v * v).collect();
        let g = guess_cfinite(&TermVector::from_zero(squares), &GuessConfig::default()).unwrap();
        assert_eq!(sq.result.annihilator(), g.annihilator());
        assert_eq!(cfinite_mul(&f, &two).unwrap().result.order(), 2);
        let ps = cfinite_partial_sum(&f).unwrap().result;
        // F_{n+2} - 1
        let expect: Vec<Rational> = f.terms(22)[2..].iter().map(|v| v - rat(1)).collect();
        assert_eq!(ps.terms(20), expect);
        let even = cfinite_multisection(&f, 2, 0).unwrap().result;
        assert_eq!(even.recurrence_string(), "a(n) = 3a(n-1) - a(n-2)");
        assert_eq!(even.terms(6), ints(&[0, 1, 3, 8, 21, 55]));
    }

    #[test]
    fn trivial_cases() {
        let f = CFiniteSeq::fibonacci();
        let zero = CFiniteSeq::zero();
        assert_eq!(cfinite_add(&f, &zero).unwrap().result, f);
        assert!(cfinite_add(&f, &f.neg()).unwrap().result.is_zero());
        assert_eq!(cfinite_mul(&f, &CFiniteSeq::constant(rat(1))).unwrap().result, f);
        let ones = CFiniteSeq::constant(rat(1));
        let n1 = cfinite_partial_sum(&ones).unwrap().result;
        assert_eq!(n1.order(), 2);
        assert_eq!(n1.terms(4), ints(&[1, 2, 3, 4]));
        assert_eq!(cfinite_multisection(&f, 1, 0).unwrap().result, f);
        let eight = cfinite_multisection(&CFiniteSeq::geometric(rat(1), rat(2)), 3, 0).unwrap();
        assert_eq!(eight.result, CFiniteSeq::geometric(rat(1), rat(8)));
    }

    #[test]
    fn self_sum_doubles() {
        // a(n) = Σ_{i<n} a(i), a(0) = 1 gives 1,1,2,4,8,… : a(n) = 2a(n-1) from n = 2.
        let mut a = vec![rat(1)];
        for n in 1..12 {
            let s: Rational = a[..n].iter().sum();
            a.push(s);
        }
        let g = guess_cfinite(&TermVector::new(1, a[1..].to_vec()), &GuessConfig::default()).unwrap();
        assert_eq!(g.annihilator(), &ints(&[1, -2])[..]);
    }
}
