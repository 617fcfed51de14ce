//! Heuristic classification of C-finite sequences as units or zero divisors
//! of the sequence ring modulo eventually-zero sequences.
//!
//! A sequence is a zero divisor there exactly when it has infinitely many
//! zero and infinitely many nonzero terms. Scanning a finite prefix cannot
//! decide that in general, so the verdict has an explicit `Unknown` arm. A
//! zero progression `a(mn + r) = 0` is confirmed exactly, since the
//! multisection along it is again C-finite and its zero test is exact.

use std::fmt;

use crate::arith::{PivotClass, RingOps};

use super::CFiniteSeq;

pub const DEFAULT_SCAN: usize = 200;
pub const DEFAULT_MAX_PERIOD: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroDivisorTag {
    Unit,
    ZeroDivisor,
    EventuallyZero,
    Unknown,
}

/// Where the zeros were found in the scanned prefix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZeroPattern {
    pub scanned: usize,
    /// `(modulus, residue)` pairs with `a(modulus·n + residue) = 0` for all n.
    pub progressions: Vec<(usize, usize)>,
    /// Zero indices in the scan not covered by a progression.
    pub sporadic_zeros: Vec<usize>,
    pub first_zero: Option<usize>,
    pub first_nonzero: Option<usize>,
    /// Start of the all-zero tail, for eventually zero sequences.
    pub zero_from: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDivisorVerdict {
    pub tag: ZeroDivisorTag,
    pub evidence: ZeroPattern,
}

impl fmt::Display for ZeroDivisorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.evidence;
        match self.tag {
            ZeroDivisorTag::Unit => write!(f, "Unit (no zero among the first {} terms)", e.scanned),
            ZeroDivisorTag::EventuallyZero => write!(
                f,
                "EventuallyZero (all terms vanish from n = {})",
                e.zero_from.unwrap_or(0)
            ),
            ZeroDivisorTag::ZeroDivisor => {
                let progs: Vec<String> = e
                    .progressions
                    .iter()
                    .map(|(m, r)| format!("n ≡ {r} mod {m}"))
                    .collect();
                write!(f, "ZeroDivisor (zeros at {}", progs.join(", "))?;
                if !e.sporadic_zeros.is_empty() {
                    write!(f, "; also n ∈ {:?}", e.sporadic_zeros)?;
                }
                write!(f, "; nonzero at n = {})", e.first_nonzero.unwrap_or(0))
            }
            ZeroDivisorTag::Unknown => write!(
                f,
                "Unknown (zeros at {:?} within the first {} terms, no periodic pattern)",
                e.sporadic_zeros, e.scanned
            ),
        }
    }
}

/// Classifies `a` by scanning `scan` terms (at least four times the minimal
/// order) and testing zero progressions of modulus up to `max_period`.
pub fn cfinite_is_zero_divisor(a: &CFiniteSeq, scan: usize, max_period: usize) -> ZeroDivisorVerdict {
    let a = a.minimize();
    let k = a.order();
    let scan = scan.max(4 * k).max(1);
    let terms = a.terms(scan);
    let zeros: Vec<usize> = (0..scan).filter(|&n| terms[n] == num_traits::zero()).collect();
    let mut evidence = ZeroPattern {
        scanned: scan,
        first_zero: zeros.first().copied(),
        first_nonzero: (0..scan).find(|&n| !zeros.contains(&n)),
        ..ZeroPattern::default()
    };
    if zeros.is_empty() {
        return ZeroDivisorVerdict {
            tag: ZeroDivisorTag::Unit,
            evidence,
        };
    }
    // k consecutive zeros force every later term to vanish.
    if let Some(from) = zero_run_start(&terms, k) {
        evidence.zero_from = Some(from);
        evidence.sporadic_zeros = zeros.iter().copied().filter(|&z| z < from).collect();
        return ZeroDivisorVerdict {
            tag: ZeroDivisorTag::EventuallyZero,
            evidence,
        };
    }
    for m in 1..=max_period {
        let residues: Vec<usize> = (0..m)
            .filter(|&r| r < scan && (r..scan).step_by(m).all(|n| zeros.binary_search(&n).is_ok()))
            .filter(|&r| a.multisection(m, r).is_zero())
            .collect();
        if residues.is_empty() {
            continue;
        }
        let covered = |n: &usize| residues.iter().any(|&r| n % m == r);
        evidence.progressions = residues.iter().map(|&r| (m, r)).collect();
        evidence.sporadic_zeros = zeros.iter().copied().filter(|n| !covered(n)).collect();
        evidence.first_nonzero = (0..scan).find(|n| !covered(n) && zeros.binary_search(n).is_err());
        let tag = if evidence.first_nonzero.is_some() {
            ZeroDivisorTag::ZeroDivisor
        } else {
            ZeroDivisorTag::Unknown
        };
        return ZeroDivisorVerdict { tag, evidence };
    }
    evidence.sporadic_zeros = zeros;
    ZeroDivisorVerdict {
        tag: ZeroDivisorTag::Unknown,
        evidence,
    }
}

fn zero_run_start(terms: &[num_rational::BigRational], k: usize) -> Option<usize> {
    use num_traits::Zero;
    if k == 0 {
        return Some(0);
    }
    let mut run = 0;
    for (n, t) in terms.iter().enumerate() {
        if t.is_zero() {
            run += 1;
            if run == k {
                return Some(n + 1 - k);
            }
        } else {
            run = 0;
        }
    }
    None
}

/// The C-finite sequences as an entry ring for fraction-free elimination.
///
/// Pivot classes come from [`cfinite_is_zero_divisor`]. An `Unknown`
/// verdict whose zeros all sit in the first half of the scan, with a
/// zero-free second half, is read as finitely many zeros and reported as a
/// non-zero-divisor; any other `Unknown` stays unusable as a pivot.
#[derive(Debug, Clone, Copy)]
pub struct CFiniteRing {
    pub scan: usize,
    pub max_period: usize,
}

impl Default for CFiniteRing {
    fn default() -> Self {
        CFiniteRing {
            scan: DEFAULT_SCAN,
            max_period: DEFAULT_MAX_PERIOD,
        }
    }
}

impl CFiniteRing {
    pub fn verdict(&self, a: &CFiniteSeq) -> ZeroDivisorVerdict {
        cfinite_is_zero_divisor(a, self.scan, self.max_period)
    }
}

impl RingOps for CFiniteRing {
    type Elem = CFiniteSeq;

    fn zero(&self) -> CFiniteSeq {
        CFiniteSeq::zero()
    }
    fn one(&self) -> CFiniteSeq {
        CFiniteSeq::constant(num_traits::one())
    }
    fn add(&self, a: &CFiniteSeq, b: &CFiniteSeq) -> CFiniteSeq {
        if a.is_zero() {
            return b.minimize();
        }
        if b.is_zero() {
            return a.minimize();
        }
        a.add(b)
    }
    fn mul(&self, a: &CFiniteSeq, b: &CFiniteSeq) -> CFiniteSeq {
        if a.is_zero() || b.is_zero() {
            return CFiniteSeq::zero();
        }
        a.mul(b)
    }
    fn neg(&self, a: &CFiniteSeq) -> CFiniteSeq {
        a.neg()
    }
    fn is_zero(&self, a: &CFiniteSeq) -> bool {
        a.is_zero()
    }
    fn pivot_class(&self, a: &CFiniteSeq) -> PivotClass {
        if a.is_zero() {
            return PivotClass::Zero;
        }
        let v = self.verdict(a);
        match v.tag {
            ZeroDivisorTag::Unit => PivotClass::Unit,
            ZeroDivisorTag::ZeroDivisor | ZeroDivisorTag::EventuallyZero => PivotClass::ZeroDivisor,
            ZeroDivisorTag::Unknown => {
                let half = v.evidence.scanned / 2;
                if v.evidence.progressions.is_empty()
                    && v.evidence.sporadic_zeros.iter().all(|&z| z < half)
                {
                    PivotClass::NonZeroDivisor
                } else {
                    PivotClass::Unknown
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn alternating_minus_one() {
        // (-1)^n - 1 = 0, -2, 0, -2, ...
        let a = CFiniteSeq::from_ints(&[1, 0, -1], &[0, -2]).unwrap();
        let v = cfinite_is_zero_divisor(&a, DEFAULT_SCAN, DEFAULT_MAX_PERIOD);
        assert_eq!(v.tag, ZeroDivisorTag::ZeroDivisor);
        assert_eq!(v.evidence.progressions, vec![(2, 0)]);
        assert_eq!(v.evidence.first_nonzero, Some(1));
        assert!(v.to_string().contains("n ≡ 0 mod 2"));
    }

    #[test]
    fn geometric_is_unit() {
        let a = CFiniteSeq::geometric(rat(1), rat(2));
        assert_eq!(cfinite_is_zero_divisor(&a, 200, 30).tag, ZeroDivisorTag::Unit);
    }

    #[test]
    fn one_then_zeros() {
        let a = CFiniteSeq::from_ints(&[1, 0], &[1]).unwrap();
        let v = cfinite_is_zero_divisor(&a, 200, 30);
        assert_eq!(v.tag, ZeroDivisorTag::EventuallyZero);
        assert_eq!(v.evidence.zero_from, Some(1));
    }

    #[test]
    fn sporadic_zero_is_unknown_but_usable() {
        // Fibonacci has the single zero F₀.
        let f = CFiniteSeq::fibonacci();
        let v = cfinite_is_zero_divisor(&f, 200, 30);
        assert_eq!(v.tag, ZeroDivisorTag::Unknown);
        assert_eq!(v.evidence.sporadic_zeros, vec![0]);
        assert_eq!(CFiniteRing::default().pivot_class(&f), PivotClass::NonZeroDivisor);
    }

    #[test]
    fn period_three_zeros_with_sporadic() {
        // a(n) = 0 when n ≡ 0 mod 3: the sequence 0,1,1,0,1,1,...
        let a = CFiniteSeq::from_ints(&[1, 0, 0, -1], &[0, 1, 1]).unwrap();
        let v = cfinite_is_zero_divisor(&a, 60, 30);
        assert_eq!(v.tag, ZeroDivisorTag::ZeroDivisor);
        assert_eq!(v.evidence.progressions, vec![(3, 0)]);
        assert!(v.evidence.sporadic_zeros.is_empty());
    }

    #[test]
    fn never_unit_with_zero_in_scan() {
        for init in [[0, 1], [1, 0], [0, 0], [2, -2]] {
            let a = CFiniteSeq::from_ints(&[1, 1, -2], &init).unwrap();
            let v = cfinite_is_zero_divisor(&a, 80, 10);
            let has_zero = a.terms(80).iter().any(|t| *t == rat(0));
            if has_zero {
                assert_ne!(v.tag, ZeroDivisorTag::Unit);
            }
            if v.tag == ZeroDivisorTag::ZeroDivisor {
                for &(m, r) in &v.evidence.progressions {
                    assert!(a.multisection(m, r).is_zero());
                }
            }
        }
    }
}
