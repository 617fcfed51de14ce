//! Randomized checks of the structural guarantees of each module.

use ansatz::arith::{rat, ratio, Polynomial, Rational};
use ansatz::closure::{cfinite_add, cfinite_mul, cfinite_partial_sum, xrecursive_add, XRecOptions};
use ansatz::genfunc::{dfinite_multiply, holonomic_rec_to_ode};
use ansatz::guess::{guess_holonomic, guess_polynomial, GuessConfig};
use ansatz::seq::{cfinite_is_zero_divisor, CFiniteSeq, HolonomicSeq, TermVector, XRecursiveSeq, ZeroDivisorTag};
use num_traits::Zero;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn small_cfinite() -> impl Strategy<Value = CFiniteSeq> {
    (1usize..=3)
        .prop_flat_map(|k| (proptest::collection::vec(-3i64..=3, k), proptest::collection::vec(-3i64..=3, k)))
        .prop_filter_map("degenerate", |(c, init)| {
            let mut ann = vec![1];
            ann.extend(c);
            CFiniteSeq::from_ints(&ann, &init).ok()
        })
}

/// Order 1–2, degree ≤ 2, valid from `offset = order`.
fn small_holonomic() -> impl Strategy<Value = HolonomicSeq> {
    (1usize..=2)
        .prop_flat_map(|r| {
            (
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), r + 1),
                proptest::collection::vec(-3i64..=3, r),
            )
        })
        .prop_filter_map("degenerate", |(coeffs, init)| {
            let polys: Vec<Polynomial> = coeffs.iter().map(|c| Polynomial::from_ints(c)).collect();
            if polys.last().unwrap().is_zero() || init.iter().all(|&v| v == 0) {
                return None;
            }
            let k = polys.len() - 1;
            HolonomicSeq::new(polys, ints(&init), 0, k).ok()
        })
}

fn scale_factor() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(2)), Just(rat(-1)), Just(ratio(1, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn holonomic_terms_are_prefix_consistent(a in small_holonomic(), m in 1usize..25) {
        let long = a.terms(30).unwrap();
        let short = a.terms(m).unwrap();
        prop_assert_eq!(&short.terms[..], &long.terms[..m]);
        prop_assert!(a.annihilates(&long));
    }

    #[test]
    fn zero_divisor_verdicts_are_backed_by_terms(a in small_cfinite()) {
        let scan = 60;
        let v = cfinite_is_zero_divisor(&a, scan, 12);
        let terms = a.terms(scan);
        let has_zero = terms.iter().any(Zero::is_zero);
        if has_zero {
            prop_assert_ne!(v.tag, ZeroDivisorTag::Unit);
        }
        if v.tag == ZeroDivisorTag::ZeroDivisor {
            prop_assert!(!v.evidence.progressions.is_empty());
            let nonzero = v.evidence.first_nonzero.expect("nonzero witness");
            prop_assert!(!terms[nonzero].is_zero());
            for &(m, r) in &v.evidence.progressions {
                for n in (r..scan).step_by(m) {
                    prop_assert!(terms[n].is_zero(), "a({}) should vanish", n);
                }
            }
        }
    }

    #[test]
    fn polynomial_guess_is_sound_minimal_and_scale_invariant(
        coeffs in proptest::collection::vec(-4i64..=4, 1..=4),
        lambda in scale_factor(),
    ) {
        let truth = Polynomial::from_ints(&coeffs);
        let data: Vec<Rational> = (0..14).map(|n| truth.eval_int(n)).collect();
        let cfg = GuessConfig::default();
        let guessed = guess_polynomial(&TermVector::from_zero(data.clone()), &cfg).unwrap();
        // Fourteen values determine a polynomial of degree ≤ 3 uniquely.
        prop_assert_eq!(&guessed.poly, &truth);
        let scaled: Vec<Rational> = data.iter().map(|v| v * &lambda).collect();
        let again = guess_polynomial(&TermVector::from_zero(scaled), &cfg).unwrap();
        prop_assert_eq!(again.poly, truth.scale(&lambda));
    }

    #[test]
    fn holonomic_guess_is_sound_and_scale_invariant(a in small_holonomic(), lambda in scale_factor()) {
        let data = a.terms(40).unwrap();
        let cfg = GuessConfig::default();
        let guessed = guess_holonomic(&data, &cfg);
        let scaled = TermVector::from_zero(data.terms.iter().map(|v| v * &lambda).collect());
        let again = guess_holonomic(&scaled, &cfg);
        match (guessed, again) {
            (Ok(g), Ok(h)) => {
                prop_assert_eq!(g.terms(40).unwrap(), data);
                prop_assert_eq!(&g.polys, &h.polys);
                let expected: Vec<Rational> = g.initials.iter().map(|v| v * &lambda).collect();
                prop_assert_eq!(h.initials, expected);
            }
            (Err(e), Err(f)) => prop_assert_eq!(e, f),
            (g, h) => prop_assert!(false, "scaling changed the outcome: {:?} vs {:?}", g, h),
        }
    }

    #[test]
    fn cfinite_closures_verify_and_minimize_idempotently(a in small_cfinite(), b in small_cfinite()) {
        let reports = [
            (a.order() + b.order(), cfinite_add(&a, &b).unwrap()),
            (a.order() * b.order(), cfinite_mul(&a, &b).unwrap()),
            (a.order() + 1, cfinite_partial_sum(&a).unwrap()),
        ];
        for (bound, report) in reports {
            prop_assert!(report.result.order() <= bound);
            prop_assert!(report.verified_terms >= 2 * report.claimed_order_bound + 4);
            let once = report.result.minimize();
            prop_assert_eq!(once.minimize(), once.clone());
            prop_assert_eq!(once.terms(30), report.result.terms(30));
        }
    }

    #[test]
    fn rec_to_ode_respects_order_and_degree(a in small_holonomic()) {
        let op = holonomic_rec_to_ode(&a).unwrap();
        let (r, d) = (a.order() as isize, a.polys.iter().map(Polynomial::degree).max().unwrap());
        prop_assert!(op.order() as isize <= d);
        prop_assert!(op.degree() <= r + d);
        prop_assert!(op.satisfied_by(&a.terms(40).unwrap().terms, 30));
    }

    #[test]
    fn product_with_one_keeps_the_series(a in small_holonomic()) {
        // The constant function 1: a(0) = 1, then a(n) = 0.
        let one = HolonomicSeq::new(vec![Polynomial::from_ints(&[1]), Polynomial::from_ints(&[0])], vec![rat(1)], 0, 1).unwrap();
        let f = a.terms(60).unwrap().terms;
        let ones = one.terms(60).unwrap().terms;
        let op = dfinite_multiply(
            &holonomic_rec_to_ode(&a).unwrap(),
            &holonomic_rec_to_ode(&one).unwrap(),
            &f,
            &ones,
        )
        .unwrap();
        prop_assert!(op.satisfied_by(&f, 40));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// With constant coefficients the X-recursive sum reduces to the C-finite
    /// sum, up to a constant left factor.
    #[test]
    fn xrecursive_sum_specializes_to_cfinite(a in small_cfinite(), b in small_cfinite()) {
        let as_xrec = |c: &CFiniteSeq| {
            let coeffs = c.annihilator().iter().map(|x| CFiniteSeq::constant(x.clone())).collect();
            XRecursiveSeq::from_zero(coeffs, c.initials().to_vec()).unwrap()
        };
        // Constant pivots are units, so elimination cannot get stuck.
        let sum = xrecursive_add(&as_xrec(&a), &as_xrec(&b), &XRecOptions::default()).unwrap().result;
        for c in &sum.coeffs {
            let t = c.terms(12);
            prop_assert!(t.iter().all(|v| *v == t[0]), "non-constant coefficient {:?}", t);
        }
        let oracle = TermVector::from_zero(cfinite_add(&a, &b).unwrap().result.terms(30));
        prop_assert!(sum.annihilates(&oracle));
    }
}
