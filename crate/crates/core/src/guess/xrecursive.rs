use num_traits::Zero;

use crate::arith::{solve, Matrix, Rational, Rationals};
use crate::seq::{CFiniteSeq, TermVector, XRecursiveSeq};

use super::{guess_cfinite, GuessConfig, GuessError};

/// First-order model `a(n) = C(n)a(n-1)` with C-finite `C`, found by
/// guessing a constant-coefficient recurrence for the ratios
/// `r(n) = a(n)/a(n-1)`.
///
/// Up to `max_skip` leading ratios may be excluded from the fit; they are
/// then carried as extra initial terms and the model's offset moves past
/// them.
pub fn guess_xrecursive_first_order(
    data: &TermVector,
    cfg: &GuessConfig,
) -> Result<XRecursiveSeq, GuessError> {
    if let Some(i) = data.terms.iter().position(Zero::is_zero) {
        return Err(GuessError::ZeroTermInData(data.start + i));
    }
    let ratios: Vec<Rational> = data.terms.windows(2).map(|w| &w[1] / &w[0]).collect();
    let mut last = GuessError::NoFit;
    for skip in 0..=cfg.max_skip {
        if skip >= ratios.len() {
            break;
        }
        let first = data.start + 1 + skip;
        let r = TermVector::new(first, ratios[skip..].to_vec());
        match guess_cfinite(&r, cfg) {
            Ok(c) => {
                let coeff = c.shift(-(first as i64)).neg();
                let initials = data.terms[..first - data.start].to_vec();
                let x = XRecursiveSeq::new(
                    vec![CFiniteSeq::constant(Rational::from_integer(1.into())), coeff],
                    initials,
                    data.start,
                    first,
                )
                .expect("first-order shape");
                return Ok(x);
            }
            Err(e @ GuessError::InsufficientData { .. }) => {
                if skip == 0 {
                    last = e;
                }
                break;
            }
            Err(_) => {}
        }
    }
    Err(last)
}

/// Order-`k` model with `C₀ = 1` and every other coefficient in the span of
/// the configured basis atoms, found by one linear solve per order.
pub fn guess_xrecursive_dict(data: &TermVector, cfg: &GuessConfig) -> Result<XRecursiveSeq, GuessError> {
    let m = cfg.basis.len();
    if m == 0 {
        return Err(GuessError::InvalidConfig("the dictionary strategy needs basis atoms".into()));
    }
    let atoms: Vec<Vec<Rational>> = cfg.basis.iter().map(|b| b.seq.terms(data.end())).collect();
    let len = data.len();
    let mut posed = false;
    for k in 1..=cfg.max_order.max(1) {
        let unknowns = k * m;
        if len < k || len - k < unknowns + cfg.margin {
            break;
        }
        posed = true;
        let first = data.start + k;
        let rows = data.end() - first;
        let a = Matrix::from_fn(rows, unknowns, |r, col| {
            let n = first + r;
            let (i, j) = (col / m + 1, col % m);
            &atoms[j][n] * data.at(n - i)
        });
        let rhs: Vec<Rational> = (first..data.end()).map(|n| -data.at(n)).collect();
        let Some(lambda) = solve(&Rationals, &a, &rhs) else {
            continue;
        };
        let mut coeffs = vec![CFiniteSeq::constant(Rational::from_integer(1.into()))];
        for i in 0..k {
            let c = (0..m).fold(CFiniteSeq::zero(), |acc, j| {
                let l = &lambda[i * m + j];
                if l.is_zero() {
                    acc
                } else {
                    acc.add(&cfg.basis[j].seq.scale(l))
                }
            });
            coeffs.push(c);
        }
        let x = XRecursiveSeq::new(coeffs, data.terms[..k].to_vec(), data.start, first)
            .expect("order-k shape");
        debug_assert!(x.annihilates(data));
        return Ok(x);
    }
    if posed {
        Err(GuessError::NoFit)
    } else {
        Err(GuessError::InsufficientData {
            needed: 1 + m + cfg.margin,
            have: len,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::guess::BasisAtom;
    use crate::seq::special::somos2014_terms;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn somos_ratios_are_fibonacci() {
        let data = somos2014_terms(10).unwrap();
        let x = guess_xrecursive_first_order(&data, &GuessConfig::default()).unwrap();
        assert_eq!(x.offset, 1);
        let c = x.coeffs[1].neg().minimize();
        assert_eq!(c.annihilator(), &ints(&[1, -1, -1])[..]);
        assert_eq!(c.term(1), rat(1));
        assert_eq!(c.term(2), rat(2));
        assert_eq!(x.terms(20).unwrap(), somos2014_terms(20).unwrap());
    }

    #[test]
    fn summation_example_needs_skip() {
        let data = TermVector::from_ints(1, &[1, 1, 2, 6, 24, 144, 1296, 18144, 399168, 13970880]);
        let cfg = GuessConfig {
            margin: 2,
            ..GuessConfig::default()
        };
        let x = guess_xrecursive_first_order(&data, &cfg).unwrap();
        let c = x.coeffs[1].neg();
        assert_eq!(c.minimize().annihilator(), &ints(&[1, -2, 0, 1])[..]);
        assert_eq!([c.term(3), c.term(4), c.term(5)], [rat(2), rat(3), rat(4)]);
        assert_eq!(x.terms(10).unwrap(), data);
    }

    #[test]
    fn geometric_degenerates() {
        let data = TermVector::from_ints(0, &[1, 2, 4, 8, 16, 32, 64, 128]);
        let x = guess_xrecursive_first_order(&data, &GuessConfig::default()).unwrap();
        assert_eq!(x.coeffs[1].minimize(), CFiniteSeq::constant(rat(-2)));
    }

    #[test]
    fn zero_term_rejected() {
        let data = TermVector::from_ints(0, &[1, 0, 2]);
        assert_eq!(
            guess_xrecursive_first_order(&data, &GuessConfig::default()),
            Err(GuessError::ZeroTermInData(1))
        );
    }

    fn oracle(c1: impl Fn(usize) -> i64, c2: impl Fn(usize) -> i64, n: usize) -> Vec<Rational> {
        let mut a = vec![num_bigint::BigInt::from(1); 2];
        for i in 2..n {
            let v = &a[i - 1] * c1(i) + &a[i - 2] * c2(i);
            a.push(v);
        }
        a.into_iter().map(Rational::from_integer).collect()
    }

    #[test]
    fn dictionary_power_of_two() {
        let data = TermVector::from_zero(oracle(|_| 1, |n| 1 << n, 14));
        assert_eq!(data.terms[..5], ints(&[1, 1, 5, 13, 93])[..]);
        let cfg = GuessConfig {
            basis: vec![
                BasisAtom::new("1", CFiniteSeq::constant(rat(1))),
                BasisAtom::new("2^n", CFiniteSeq::geometric(rat(1), rat(2))),
            ],
            ..GuessConfig::default()
        };
        let x = guess_xrecursive_dict(&data, &cfg).unwrap();
        assert_eq!(x.order(), 2);
        assert_eq!(x.coeffs[1].minimize(), CFiniteSeq::constant(rat(-1)));
        assert_eq!(x.coeffs[2].minimize(), CFiniteSeq::geometric(rat(-1), rat(2)));
    }

    #[test]
    fn dictionary_fibonacci_coefficients() {
        let fib = |n: usize| {
            let (mut a, mut b) = (0i64, 1i64);
            for _ in 0..n {
                (a, b) = (b, a + b);
            }
            a
        };
        let data = TermVector::from_zero(oracle(fib, |n| fib(n - 1), 14));
        assert_eq!(data.terms[..5], ints(&[1, 1, 2, 5, 19])[..]);
        let f = CFiniteSeq::fibonacci();
        let cfg = GuessConfig {
            basis: vec![BasisAtom::new("F(n)", f.clone()), BasisAtom::new("F(n-1)", f.shift(-1))],
            ..GuessConfig::default()
        };
        let x = guess_xrecursive_dict(&data, &cfg).unwrap();
        assert_eq!(x.coeffs[1].minimize(), f.neg());
        assert_eq!(x.coeffs[2].minimize(), f.shift(-1).neg());
    }

    #[test]
    fn dictionary_constant_basis_matches_cfinite() {
        let data = TermVector::from_ints(0, &[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        let cfg = GuessConfig {
            basis: vec![BasisAtom::new("1", CFiniteSeq::constant(rat(1)))],
            ..GuessConfig::default()
        };
        let x = guess_xrecursive_dict(&data, &cfg).unwrap();
        let c = guess_cfinite(&data, &cfg).unwrap();
        for (i, ci) in x.coeffs.iter().enumerate() {
            assert_eq!(ci.minimize(), CFiniteSeq::constant(c.annihilator()[i].clone()));
        }
    }
}
