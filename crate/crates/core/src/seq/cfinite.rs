//! Constant-coefficient recurrences and the ring they form under termwise
//! operations.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Polynomial, Rational};

use super::{render_linear_terms, SeqError, TermVector};

/// `a(n) + c₁a(n-1) + … + c_k a(n-k) = 0` for `n ≥ k`, stored as the monic
/// annihilator `(1, c₁, …, c_k)` together with `a(0) … a(k-1)`.
///
/// `c_k` may be zero: the sequence `0, 0, 1, 1, 1, …` needs order 3 even
/// though only `c₁` is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CFiniteSeq {
    annihilator: Vec<Rational>,
    initials: Vec<Rational>,
}

impl CFiniteSeq {
    pub fn new(annihilator: Vec<Rational>, initials: Vec<Rational>) -> Result<Self, SeqError> {
        if annihilator.first().map_or(true, |c| !c.is_one()) {
            return Err(SeqError::Invalid(
                "annihilator must start with the coefficient 1".into(),
            ));
        }
        if initials.len() + 1 != annihilator.len() {
            return Err(SeqError::Invalid(format!(
                "order {} recurrence needs {} initial terms, got {}",
                annihilator.len() - 1,
                annihilator.len() - 1,
                initials.len()
            )));
        }
        Ok(CFiniteSeq {
            annihilator,
            initials,
        })
    }

    pub fn from_ints(annihilator: &[i64], initials: &[i64]) -> Result<Self, SeqError> {
        Self::new(
            annihilator.iter().map(|&c| rat(c)).collect(),
            initials.iter().map(|&c| rat(c)).collect(),
        )
    }

    /// From the `a(n) = r₁a(n-1) + … + r_k a(n-k)` form.
    pub fn from_recurrence(coeffs: Vec<Rational>, initials: Vec<Rational>) -> Result<Self, SeqError> {
        let mut ann = vec![Rational::one()];
        ann.extend(coeffs.into_iter().map(|c| -c));
        Self::new(ann, initials)
    }

    pub fn zero() -> Self {
        CFiniteSeq {
            annihilator: vec![Rational::one()],
            initials: Vec::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::geometric(c, Rational::one())
    }

    /// `scale · ratioⁿ`.
    pub fn geometric(scale: Rational, ratio: Rational) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        CFiniteSeq {
            annihilator: vec![Rational::one(), -ratio],
            initials: vec![scale],
        }
    }

    /// `F₀ = 0, F₁ = 1`.
    pub fn fibonacci() -> Self {
        Self::from_ints(&[1, -1, -1], &[0, 1]).unwrap()
    }

    /// `L₀ = 2, L₁ = 1`.
    pub fn lucas() -> Self {
        Self::from_ints(&[1, -1, -1], &[2, 1]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.annihilator.len() - 1
    }

    pub fn annihilator(&self) -> &[Rational] {
        &self.annihilator
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    /// `r_i` in `a(n) = Σ r_i a(n-i)`.
    pub fn recurrence_coeffs(&self) -> Vec<Rational> {
        self.annihilator[1..].iter().map(|c| -c).collect()
    }

    /// Characteristic polynomial `t^k + c₁t^(k-1) + … + c_k`.
    pub fn charpoly(&self) -> Polynomial {
        Polynomial::new(self.annihilator.iter().rev().cloned().collect())
    }

    /// Annihilator as the polynomial `1 + c₁x + … + c_k x^k`.
    pub fn annihilator_poly(&self) -> Polynomial {
        Polynomial::new(self.annihilator.clone())
    }

    pub fn terms(&self, count: usize) -> Vec<Rational> {
        let k = self.order();
        let mut out: Vec<Rational> = self.initials.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let v = (1..=k).fold(Rational::zero(), |acc, i| {
                let c = &self.annihilator[i];
                if c.is_zero() {
                    acc
                } else {
                    acc - c * &out[n - i]
                }
            });
            out.push(v);
        }
        out
    }

    pub fn term_vector(&self, count: usize) -> TermVector {
        TermVector::from_zero(self.terms(count))
    }

    pub fn term(&self, n: usize) -> Rational {
        self.terms(n + 1).pop().unwrap()
    }

    /// True iff the sequence is identically zero: the first `order` terms
    /// vanish and the recurrence carries that forward.
    pub fn is_zero(&self) -> bool {
        self.initials.iter().all(Zero::is_zero)
    }

    /// Value of the annihilator applied at index `n ≥ order` of `terms`.
    pub fn residual(&self, terms: &[Rational], n: usize) -> Rational {
        self.annihilator
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, c)| acc + c * &terms[n - i])
    }

    /// Whether the recurrence holds at every index `≥ order` of `terms`
    /// (which start at index 0).
    pub fn annihilates(&self, terms: &[Rational]) -> bool {
        (self.order()..terms.len()).all(|n| self.residual(terms, n).is_zero())
    }

    /// Minimal-order representation of the same sequence.
    ///
    /// The sequence satisfies a recurrence of order `k`, so its linear
    /// complexity is at most `k` and Berlekamp–Massey on `2k` terms recovers
    /// the minimal recurrence. The result is checked on `2k + 4` terms.
    pub fn minimize(&self) -> CFiniteSeq {
        let k = self.order();
        if k == 0 {
            return self.clone();
        }
        let terms = self.terms(2 * k + 4);
        let (ann, len) = berlekamp_massey(&terms[..2 * k]);
        if len >= k {
            return self.clone();
        }
        let min = CFiniteSeq {
            annihilator: ann,
            initials: terms[..len].to_vec(),
        };
        debug_assert!(min.annihilates(&terms), "minimized recurrence does not verify");
        min
    }

    pub fn neg(&self) -> CFiniteSeq {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> CFiniteSeq {
        if c.is_zero() {
            return Self::zero();
        }
        CFiniteSeq {
            annihilator: self.annihilator.clone(),
            initials: self.initials.iter().map(|v| v * c).collect(),
        }
    }

    /// Termwise sum from the product of the annihilators, not minimized.
    pub fn add_unminimized(&self, other: &CFiniteSeq) -> CFiniteSeq {
        let k = self.order() + other.order();
        let ann = padded((&self.annihilator_poly() * &other.annihilator_poly()).into_coeffs(), k);
        let (a, b) = (self.terms(k), other.terms(k));
        let init = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        CFiniteSeq::new(ann, init).expect("product of monic annihilators")
    }

    /// Termwise product from the characteristic polynomial of the Kronecker
    /// product of the companion matrices, not minimized.
    ///
    /// `trace((A⊗B)^j) = trace(A^j)·trace(B^j)`, so the power sums of the
    /// result are products of the inputs' power sums and Newton's identities
    /// recover the characteristic polynomial.
    pub fn mul_unminimized(&self, other: &CFiniteSeq) -> CFiniteSeq {
        let k = self.order() * other.order();
        if k == 0 {
            return Self::zero();
        }
        let pa = power_sums(&self.annihilator, k);
        let pb = power_sums(&other.annihilator, k);
        let p: Vec<Rational> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
        let ann = annihilator_from_power_sums(&p);
        let (a, b) = (self.terms(k), other.terms(k));
        let init = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        CFiniteSeq::new(ann, init).expect("Newton identities give a monic annihilator")
    }

    /// `Σ_{j=0}^{n} a(j)`, annihilator `(1-x)·ann`, not minimized.
    pub fn partial_sum_unminimized(&self) -> CFiniteSeq {
        let k = self.order() + 1;
        let ann = padded((&self.annihilator_poly() * &Polynomial::from_ints(&[1, -1])).into_coeffs(), k);
        let mut acc = Rational::zero();
        let init = self
            .terms(k)
            .into_iter()
            .map(|v| {
                acc += v;
                acc.clone()
            })
            .collect();
        CFiniteSeq::new(ann, init).expect("monic")
    }

    /// `a(m·n + r)` from the characteristic polynomial of `M^m`, not
    /// minimized. Power sums of `M^m` are every `m`-th power sum of `M`.
    pub fn multisection_unminimized(&self, m: usize, r: usize) -> CFiniteSeq {
        assert!(m >= 1, "multisection modulus must be positive");
        let k = self.order();
        if k == 0 {
            return Self::zero();
        }
        let ann = if m == 1 {
            self.annihilator.clone()
        } else {
            let p = power_sums(&self.annihilator, k * m);
            let pm: Vec<Rational> = (1..=k).map(|j| p[j * m - 1].clone()).collect();
            annihilator_from_power_sums(&pm)
        };
        let all = self.terms(m * (k - 1) + r + 1);
        let init = (0..k).map(|n| all[m * n + r].clone()).collect();
        CFiniteSeq::new(ann, init).expect("monic")
    }

    pub fn add(&self, other: &CFiniteSeq) -> CFiniteSeq {
        self.add_unminimized(other).minimize()
    }

    pub fn sub(&self, other: &CFiniteSeq) -> CFiniteSeq {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CFiniteSeq) -> CFiniteSeq {
        self.mul_unminimized(other).minimize()
    }

    pub fn partial_sum(&self) -> CFiniteSeq {
        self.partial_sum_unminimized().minimize()
    }

    pub fn multisection(&self, m: usize, r: usize) -> CFiniteSeq {
        self.multisection_unminimized(m, r).minimize()
    }

    /// `n ↦ a(n + m)`. Negative shifts extend the sequence backwards through
    /// the recurrence when its last coefficient is nonzero; otherwise the
    /// new leading terms are zero and the order grows by `|m|`.
    pub fn shift(&self, m: i64) -> CFiniteSeq {
        let a = self.minimize();
        let k = a.order();
        if k == 0 || m == 0 {
            return a;
        }
        if m > 0 {
            let m = m as usize;
            let terms = a.terms(m + k);
            return CFiniteSeq {
                annihilator: a.annihilator.clone(),
                initials: terms[m..].to_vec(),
            };
        }
        let back = (-m) as usize;
        let ck = a.annihilator[k].clone();
        if !ck.is_zero() {
            // a(n-k) = -(a(n) + c₁a(n-1) + … + c_{k-1}a(n-k+1)) / c_k
            let mut window: Vec<Rational> = a.initials.clone();
            for _ in 0..back {
                let s = (0..k).fold(Rational::zero(), |acc, i| {
                    acc + &a.annihilator[i] * &window[k - 1 - i]
                });
                window.insert(0, -s / &ck);
                window.truncate(k);
            }
            return CFiniteSeq {
                annihilator: a.annihilator.clone(),
                initials: window,
            };
        }
        let mut ann = a.annihilator.clone();
        ann.extend(std::iter::repeat(Rational::zero()).take(back));
        let mut init = vec![Rational::zero(); back];
        init.extend(a.terms(k));
        CFiniteSeq::new(ann, init).expect("padded annihilator").minimize()
    }

    /// Short human-readable name: constants and geometric sequences get a
    /// closed form, anything else its recurrence data.
    pub fn describe(&self) -> String {
        let a = self.minimize();
        match a.order() {
            0 => "0".to_string(),
            1 => {
                let ratio = -a.annihilator[1].clone();
                let scale = &a.initials[0];
                if ratio.is_one() {
                    scale.to_string()
                } else if ratio.is_zero() {
                    format!("[{scale} if n=0 else 0]")
                } else {
                    let base = if ratio.is_negative() || !ratio.is_integer() {
                        format!("({ratio})^n")
                    } else {
                        format!("{ratio}^n")
                    };
                    if scale.is_one() {
                        base
                    } else if (-scale.clone()).is_one() {
                        format!("-{base}")
                    } else {
                        format!("{scale}*{base}")
                    }
                }
            }
            _ => format!(
                "C[{}; {}]",
                join(&a.annihilator),
                join(&a.initials)
            ),
        }
    }

    /// `a(n) = 3a(n-1) - 2a(n-2)`.
    pub fn recurrence_string(&self) -> String {
        let r = self.recurrence_coeffs();
        let mut coeffs = vec![String::new()];
        let mut negs = vec![false];
        for c in &r {
            if c.is_zero() {
                coeffs.push(String::new());
                negs.push(false);
            } else {
                let abs = c.abs();
                coeffs.push(if abs.is_integer() { abs.to_string() } else { format!("({abs})") });
                negs.push(c.is_negative());
            }
        }
        let rhs = render_linear_terms(&coeffs, &negs);
        format!("a(n) = {rhs}")
    }
}

/// Restores trailing zero coefficients lost in polynomial form.
fn padded(mut ann: Vec<Rational>, k: usize) -> Vec<Rational> {
    ann.resize(k + 1, Rational::zero());
    ann
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Debug for CFiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CFiniteSeq(ann=[{}], init=[{}])",
            join(&self.annihilator),
            join(&self.initials)
        )
    }
}

impl fmt::Display for CFiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, a(0..{}) = [{}]", self.recurrence_string(), self.order(), join(&self.initials))
    }
}

/// Power sums `p_1..p_count` of the roots of `t^k + c₁t^(k-1) + … + c_k`.
fn power_sums(ann: &[Rational], count: usize) -> Vec<Rational> {
    let k = ann.len() - 1;
    let mut p: Vec<Rational> = Vec::with_capacity(count);
    for j in 1..=count {
        // p_j + c₁p_{j-1} + … + c_{j-1}p₁ + j·c_j = 0   (j ≤ k)
        // p_j + c₁p_{j-1} + … + c_k p_{j-k} = 0          (j > k)
        let mut s = Rational::zero();
        for i in 1..j.min(k + 1) {
            if !ann[i].is_zero() {
                s += &ann[i] * &p[j - i - 1];
            }
        }
        if j <= k {
            s += &ann[j] * rat(j as i64);
        }
        p.push(-s);
    }
    p
}

/// Inverse of [`power_sums`]: the monic annihilator of degree `p.len()`.
fn annihilator_from_power_sums(p: &[Rational]) -> Vec<Rational> {
    let k = p.len();
    let mut c = vec![Rational::one()];
    for j in 1..=k {
        let mut s = p[j - 1].clone();
        for i in 1..j {
            s += &c[i] * &p[j - i - 1];
        }
        c.push(-s / rat(j as i64));
    }
    c
}

/// Shortest linear recurrence generating `s`.
///
/// Returns the monic annihilator padded to length `L + 1` and the linear
/// complexity `L`, so that `s(n) + c₁s(n-1) + … + c_L s(n-L) = 0` for
/// `L ≤ n < s.len()`.
pub fn berlekamp_massey(s: &[Rational]) -> (Vec<Rational>, usize) {
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut len = 0usize;
    let mut m = 1usize;
    let mut last = Rational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=len.min(c.len() - 1) {
            if !c[i].is_zero() {
                d += &c[i] * &s[n - i];
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &coef * bi;
        }
        if 2 * len <= n {
            b = std::mem::replace(&mut c, next);
            len = n + 1 - len;
            last = d;
            m = 1;
        } else {
            c = next;
            m += 1;
        }
    }
    c.resize(len + 1, Rational::zero());
    c.truncate(len + 1);
    (c, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{nullspace, ratio, Matrix, Rationals};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn paper_two_three_five() {
        let a = CFiniteSeq::from_ints(&[1, -3, 2], &[2, 3]).unwrap();
        assert_eq!(
            a.terms(11),
            ints(&[2, 3, 5, 9, 17, 33, 65, 129, 257, 513, 1025])
        );
        assert_eq!(a.recurrence_string(), "a(n) = 3a(n-1) - 2a(n-2)");
        assert!(a.annihilates(&a.terms(40)));
    }

    #[test]
    fn ring_operations() {
        let f = CFiniteSeq::fibonacci();
        let two = CFiniteSeq::geometric(rat(1), rat(2));
        let s = f.add(&two);
        assert_eq!(s.order(), 3);
        let oracle: Vec<Rational> = f.terms(20).iter().zip(two.terms(20)).map(|(x, y)| x + y).collect();
        assert_eq!(s.terms(20), oracle);
        assert_eq!(s.terms(5), ints(&[1, 3, 5, 10, 19]));
        let six = two.mul(&CFiniteSeq::geometric(rat(1), rat(3)));
        assert_eq!(six, CFiniteSeq::geometric(rat(1), rat(6)));
        let g = f.shift(1);
        assert_eq!(g.terms(5), ints(&[1, 1, 2, 3, 5]));
        assert_eq!(g.annihilator(), f.annihilator());
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.sub(&f).order(), 0);
    }

    #[test]
    fn zero_tests() {
        assert!(CFiniteSeq::from_ints(&[1, -1], &[0]).unwrap().is_zero());
        assert!(!CFiniteSeq::fibonacci().is_zero());
        assert!(CFiniteSeq::fibonacci().add(&CFiniteSeq::fibonacci().scale(&rat(-1))).is_zero());
    }

    /// Rank of the Hankel matrix of `terms` with `k` columns.
    fn hankel_rank(terms: &[Rational], k: usize) -> usize {
        let rows = terms.len() - k + 1;
        let h = Matrix::from_fn(rows, k, |i, j| terms[i + j].clone());
        k - nullspace(&Rationals, &h).len()
    }

    #[test]
    fn minimize_examples() {
        // 2^n multiplied by the constant 1 written with a needlessly long annihilator
        let one4 = CFiniteSeq::from_ints(&[1, -1, 0, 0, 0], &[1, 1, 1, 1]).unwrap();
        let two = CFiniteSeq::geometric(rat(1), rat(2));
        let big = two.mul_unminimized(&one4);
        assert_eq!(big.order(), 4);
        let terms = big.terms(12);
        // Hankel-rank oracle: rank 1 means order 1
        assert_eq!(hankel_rank(&terms, 6), 1);
        let min = big.minimize();
        assert_eq!(min, CFiniteSeq::from_ints(&[1, -2], &[1]).unwrap());
        assert_eq!(CFiniteSeq::fibonacci().minimize(), CFiniteSeq::fibonacci());
        let zero3 = CFiniteSeq::from_ints(&[1, 2, 3, 4], &[0, 0, 0]).unwrap();
        assert_eq!(zero3.minimize().order(), 0);
    }

    #[test]
    fn minimize_keeps_trailing_zero_coefficients() {
        // 0, 0, 1, 1, 1, ... has GF x²/(1-x): order 3 with c₂ = c₃ = 0
        let a = CFiniteSeq::from_ints(&[1, -1, 0, 0], &[0, 0, 1]).unwrap();
        let big = a.mul_unminimized(&CFiniteSeq::constant(rat(1)));
        let m = big.minimize();
        assert_eq!(m.order(), 3);
        assert_eq!(m.terms(8), a.terms(8));
    }

    #[test]
    fn backward_shift() {
        let f = CFiniteSeq::fibonacci();
        assert_eq!(f.shift(-1).terms(5), ints(&[1, 0, 1, 1, 2]));
        let half = CFiniteSeq::geometric(rat(1), rat(2)).shift(-1);
        assert_eq!(half.terms(3), vec![ratio(1, 2), rat(1), rat(2)]);
        // 1, 0, 0, ... cannot be extended backwards; pad with zeros
        let delta = CFiniteSeq::from_ints(&[1, 0], &[1]).unwrap();
        assert_eq!(delta.shift(-2).terms(5), ints(&[0, 0, 1, 0, 0]));
    }

    #[test]
    fn closures_match_termwise_oracles() {
        let f = CFiniteSeq::fibonacci();
        let psum = f.partial_sum();
        let ft = f.terms(12);
        let mut acc = rat(0);
        for (n, v) in ft.iter().enumerate() {
            acc += v;
            assert_eq!(psum.term(n), acc);
        }
        let f2n = f.multisection(2, 0);
        assert_eq!(f2n.terms(6), ints(&[0, 1, 3, 8, 21, 55]));
        assert_eq!(f2n.recurrence_coeffs(), ints(&[3, -1]));
        let sq = f.mul(&f);
        assert_eq!(sq.order(), 3);
        assert_eq!(sq.terms(7), ints(&[0, 1, 1, 4, 9, 25, 64]));
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let (ann, len) = berlekamp_massey(&ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(len, 2);
        assert_eq!(ann, ints(&[1, -1, -1]));
    }

    fn arb_cfinite() -> impl Strategy<Value = CFiniteSeq> {
        (1usize..=3).prop_flat_map(|k| {
            (
                proptest::collection::vec(-3i64..=3, k),
                proptest::collection::vec(-3i64..=3, k),
            )
                .prop_map(|(c, init)| {
                    let mut ann = vec![1];
                    ann.extend(c);
                    CFiniteSeq::from_ints(&ann, &init).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_laws_termwise(a in arb_cfinite(), b in arb_cfinite(), c in arb_cfinite()) {
            let n = 30;
            let t = |s: &CFiniteSeq| s.terms(n);
            prop_assert_eq!(t(&a.add(&b)), t(&b.add(&a)));
            prop_assert_eq!(t(&a.mul(&b)), t(&b.mul(&a)));
            prop_assert_eq!(t(&a.add(&b).add(&c)), t(&a.add(&b.add(&c))));
            prop_assert_eq!(t(&a.mul(&b).mul(&c)), t(&a.mul(&b.mul(&c))));
            prop_assert_eq!(t(&a.mul(&b.add(&c))), t(&a.mul(&b).add(&a.mul(&c))));
            let (ta, tb) = (t(&a), t(&b));
            let prod: Vec<Rational> = ta.iter().zip(&tb).map(|(x, y)| x * y).collect();
            prop_assert_eq!(t(&a.mul(&b)), prod);
        }

        #[test]
        fn minimize_preserves_prefix(a in arb_cfinite(), b in arb_cfinite()) {
            let big = a.mul_unminimized(&b);
            let k = big.order();
            let m = big.minimize();
            prop_assert!(m.order() <= k);
            prop_assert_eq!(m.terms(2 * k + 4), big.terms(2 * k + 4));
            prop_assert_eq!(m.minimize(), m.clone());
        }

        #[test]
        fn generated_terms_satisfy_annihilator(a in arb_cfinite(), m in 1usize..40) {
            let t = a.terms(m + a.order());
            prop_assert!(a.annihilates(&t));
            prop_assert_eq!(&a.terms(m)[..], &t[..m]);
        }
    }
}
