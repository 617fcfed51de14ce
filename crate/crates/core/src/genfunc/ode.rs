use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::modular::{crt, primes, rational_reconstruct, Zp};
use crate::arith::{content_factor, lift_to_integers, rref, Matrix, Polynomial, Rational, Rationals};
use crate::seq::{normalize_operator, HolonomicSeq};

use super::{verification_order, GenfuncError};

/// `q₀(x)f + q₁(x)f′ + … + q_k(x)f⁽ᵏ⁾ = rhs(x)`.
///
/// After [`OdeOperator::new`] the top coefficient is nonzero and all
/// coefficients, together with `rhs`, are coprime integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeOperator {
    pub coeffs: Vec<Polynomial>,
    pub rhs: Polynomial,
}

impl OdeOperator {
    pub fn new(mut coeffs: Vec<Polynomial>, rhs: Polynomial) -> Result<Self, GenfuncError> {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(GenfuncError::DegenerateOperator);
        }
        let mut factor = content_factor(
            coeffs
                .iter()
                .chain(std::iter::once(&rhs))
                .flat_map(|p| p.coeffs().iter()),
        );
        if coeffs.last().unwrap().leading().is_negative() {
            factor = -factor;
        }
        Ok(OdeOperator {
            coeffs: coeffs.iter().map(|p| p.scale(&factor)).collect(),
            rhs: rhs.scale(&factor),
        })
    }

    pub fn homogeneous(coeffs: Vec<Polynomial>) -> Result<Self, GenfuncError> {
        Self::new(coeffs, Polynomial::zero())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> isize {
        self.coeffs.iter().map(Polynomial::degree).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero()
    }

    /// An operator without right-hand side whose solutions include those of
    /// `self`: for `L f = r` this is `r·(L f)′ − r′·(L f)`.
    pub fn homogenize(&self) -> OdeOperator {
        if self.rhs.is_zero() {
            return self.clone();
        }
        let r = &self.rhs;
        let dr = r.derivative();
        let k = self.order();
        let mut out = vec![Polynomial::zero(); k + 2];
        for (i, q) in self.coeffs.iter().enumerate() {
            out[i] = &out[i] + &(&(r * &q.derivative()) - &(&dr * q));
            out[i + 1] = &out[i + 1] + &(r * q);
        }
        OdeOperator::homogeneous(out).expect("top coefficient r·q_k is nonzero")
    }

    /// Coefficients `0..count` of `Σ qᵢ(x)·f⁽ⁱ⁾(x)` for the series `f`; needs
    /// `count + order` coefficients of `f`.
    pub fn apply_series(&self, f: &[Rational], count: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); count];
        let mut deriv: Vec<Rational> = f.to_vec();
        for q in &self.coeffs {
            for (j, c) in q.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for n in j..count {
                    if let Some(v) = deriv.get(n - j) {
                        out[n] += c * v;
                    }
                }
            }
            deriv = derivative_series(&deriv);
        }
        out
    }

    /// Whether `f` satisfies the equation through `x^{count-1}`.
    pub fn satisfied_by(&self, f: &[Rational], count: usize) -> bool {
        let lhs = self.apply_series(f, count);
        lhs.iter().enumerate().all(|(n, v)| *v == self.rhs.coeff(n))
    }
}

fn derivative_series(f: &[Rational]) -> Vec<Rational> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| c * Rational::from_integer(n.into()))
        .collect()
}

impl fmt::Display for OdeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let d = match i {
                0 => "f".to_string(),
                1 => "f'".to_string(),
                2 => "f''".to_string(),
                _ => format!("f^({i})"),
            };
            let (neg, q) = if q.leading().is_negative() { (true, -q) } else { (false, q.clone()) };
            let c = if q.is_one() {
                String::new()
            } else if q.term_count() == 1 {
                format!("{}*", q.display_with("x"))
            } else {
                format!("({})*", q.display_with("x"))
            };
            let sign = match (parts.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            parts.push(format!("{sign}{c}{d}"));
        }
        write!(f, "{} = {}", parts.concat(), self.rhs.display_with("x"))
    }
}

/// Zero-padded series `Σ_{n≥0} a(n)xⁿ` of a holonomic sequence.
fn series_of(a: &HolonomicSeq, count: usize) -> Result<Vec<Rational>, GenfuncError> {
    let mut out = vec![Rational::zero(); a.start.min(count)];
    if count > a.start {
        out.extend(a.terms(count - a.start)?.terms);
    }
    Ok(out)
}

/// The differential equation of `Σ a(n)xⁿ` (terms before `start` are
/// zero). A recurrence of order `r` and degree `d` gives order at most `d`
/// and coefficient degree at most `r + d`; the right-hand side collects the
/// initial indices where the recurrence is not asserted.
pub fn holonomic_rec_to_ode(a: &HolonomicSeq) -> Result<OdeOperator, GenfuncError> {
    let r = a.order();
    let d = a.degree().max(0) as usize;
    let mut coeffs = vec![Polynomial::zero(); d + 1];
    // Σᵢ xⁱ pᵢ(θ+i) with θ = xD and θ(θ-1)…(θ-j+1) = xʲDʲ.
    for (i, p) in a.polys.iter().enumerate() {
        for (j, e) in p.shift(i as i64).to_falling_factorial_basis().into_iter().enumerate() {
            if !e.is_zero() {
                coeffs[j] = &coeffs[j] + &Polynomial::monomial(e, i + j);
            }
        }
    }
    let f = series_of(a, a.offset.max(1))?;
    let rhs: Vec<Rational> = (0..a.offset)
        .map(|n| {
            a.polys.iter().enumerate().fold(Rational::zero(), |acc, (i, p)| {
                if n < i {
                    acc
                } else {
                    acc + p.eval_int(n as i64) * &f[n - i]
                }
            })
        })
        .collect();
    let op = OdeOperator::new(coeffs, Polynomial::new(rhs))?;
    let t = verification_order(r + d);
    let series = series_of(a, t + op.order())?;
    if !op.satisfied_by(&series, t) {
        return Err(GenfuncError::VerificationFailed(
            "operator does not annihilate the generating function".into(),
        ));
    }
    Ok(op)
}

/// Backward recurrence `Σ pᵢ(n)c(n-i) = 0` on the coefficients of any
/// solution of the homogeneous part of `op`. It holds for every `n` past
/// the degree of the right-hand side.
pub fn ode_to_rec(op: &OdeOperator) -> Result<Vec<Polynomial>, GenfuncError> {
    // [xⁿ] c·xʲ·f⁽ᵐ⁾ = c·(n-j+m)(n-j+m-1)…(n-j+1)·a(n-j+m).
    let mut by_shift: BTreeMap<i64, Polynomial> = BTreeMap::new();
    for (m, q) in op.coeffs.iter().enumerate() {
        let ff = Polynomial::falling_factorial(m);
        for (j, c) in q.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = j as i64 - m as i64;
            let term = ff.shift(-s).scale(c);
            let slot = by_shift.entry(s).or_insert_with(Polynomial::zero);
            *slot = &*slot + &term;
        }
    }
    by_shift.retain(|_, p| !p.is_zero());
    let (&lo, _) = by_shift.iter().next().ok_or(GenfuncError::DegenerateOperator)?;
    let (&hi, _) = by_shift.iter().next_back().unwrap();
    let polys: Vec<Polynomial> = (lo..=hi)
        .map(|s| by_shift.get(&s).map_or_else(Polynomial::zero, |p| p.shift(lo)))
        .collect();
    Ok(normalize_operator(&polys))
}

/// Operator for the product of two D-finite series together with the order
/// bound it respects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfiniteProduct {
    pub operator: OdeOperator,
    pub bound: usize,
}

/// Coordinates of `Σ αᵢ f⁽ⁱ⁾` after one differentiation, with `f⁽ᵏ⁾`
/// reduced by `f⁽ᵏ⁾ = Σ ρᵢ f⁽ⁱ⁾`.
/// `f⁽ᵏ⁾ = Σ ρᵢ f⁽ⁱ⁾` for a homogeneous operator, kept as polynomial
/// numerators `-qᵢ` over the leading coefficient.
struct Reducer {
    lead: Polynomial,
    neg_coeffs: Vec<Polynomial>,
}

impl Reducer {
    fn new(op: &OdeOperator) -> Self {
        let k = op.order();
        Reducer {
            lead: op.coeffs[k].clone(),
            neg_coeffs: op.coeffs[..k].iter().map(|q| -q).collect(),
        }
    }

    fn order(&self) -> usize {
        self.neg_coeffs.len()
    }
}

/// A homogeneous operator for `h = f·g`, found as the first linear
/// dependency among `h, h′, h″, …` in the span of `f⁽ⁱ⁾g⁽ʲ⁾`. The series
/// arguments must hold enough coefficients for the check.
///
/// `h⁽ᵗ⁾` is tracked as `W_t / Qᵗ` with `Q` the product of the leading
/// coefficients and `W_t` a polynomial vector, so the search runs on
/// polynomial matrices. Ranks are read off exact evaluations and the
/// dependency comes from maximal minors, then is checked identically.
pub fn dfinite_multiply(
    opf: &OdeOperator,
    opg: &OdeOperator,
    f: &[Rational],
    g: &[Rational],
) -> Result<OdeOperator, GenfuncError> {
    let (opf, opg) = (opf.homogenize(), opg.homogenize());
    let (rf, rg) = (Reducer::new(&opf), Reducer::new(&opg));
    let (kf, kg) = (rf.order(), rg.order());
    let bound = kf * kg;
    let op = if bound == 0 {
        // One factor is the zero series.
        OdeOperator::homogeneous(vec![Polynomial::one()])?
    } else {
        let q = &rf.lead * &rg.lead;
        let mut w0 = vec![Polynomial::zero(); bound];
        w0[0] = Polynomial::one();
        let mut w = vec![w0];
        let mut found = None;
        for t in 1..=bound {
            let next = differentiate(&w[t - 1], t - 1, &q, &rf, &rg);
            w.push(next);
            if let Some(e) = first_dependency(&w) {
                found = Some(e.iter().enumerate().map(|(j, ej)| ej * &q.pow(j as u32)).collect());
                break;
            }
        }
        OdeOperator::homogeneous(found.ok_or(GenfuncError::DegenerateOperator)?)?
    };
    let t = verification_order(bound)
        .min(f.len().min(g.len()).saturating_sub(op.order()));
    let h = super::convolve(f, g);
    if t == 0 || !op.satisfied_by(&h, t) {
        return Err(GenfuncError::VerificationFailed(
            "product operator does not annihilate the product series".into(),
        ));
    }
    Ok(op)
}

/// `W_{t+1} = Q·W_t′ - t·Q′·W_t + Q·(shift of W_t)`, where a shift past the
/// top derivative is reduced through the operator.
fn differentiate(v: &[Polynomial], t: usize, q: &Polynomial, rf: &Reducer, rg: &Reducer) -> Vec<Polynomial> {
    let (kf, kg) = (rf.order(), rg.order());
    let mut out = vec![Polynomial::zero(); kf * kg];
    let tq = q.derivative().scale(&Rational::from_integer(t.into()));
    let add = |i: usize, j: usize, c: Polynomial, out: &mut Vec<Polynomial>| {
        out[i * kg + j] = &out[i * kg + j] + &c;
    };
    for i in 0..kf {
        for j in 0..kg {
            let c = &v[i * kg + j];
            if c.is_zero() {
                continue;
            }
            add(i, j, &(q * &c.derivative()) - &(&tq * c), &mut out);
            let qc = q * c;
            if i + 1 < kf {
                add(i + 1, j, qc.clone(), &mut out);
            } else {
                let cg = c * &rg.lead;
                for (ii, r) in rf.neg_coeffs.iter().enumerate() {
                    add(ii, j, &cg * r, &mut out);
                }
            }
            if j + 1 < kg {
                add(i, j + 1, qc, &mut out);
            } else {
                let cf = c * &rf.lead;
                for (jj, r) in rg.neg_coeffs.iter().enumerate() {
                    add(i, jj, &cf * r, &mut out);
                }
            }
        }
    }
    out
}

/// Evaluation points for rank detection.
const PROBES: [i64; 3] = [7, -11, 101];

/// A polynomial vector `e` with `Σ e_j·cols[j] = 0`, or `None` when the
/// columns are independent over `ℚ(x)`.
fn first_dependency(cols: &[Vec<Polynomial>]) -> Option<Vec<Polynomial>> {
    let (rows, n) = (cols[0].len(), cols.len());
    // Rows independent at some probe; if the columns have full rank there,
    // they are independent over ℚ(x).
    let mut best: Option<Vec<usize>> = None;
    for &p in &PROBES {
        let x = Rational::from_integer(p.into());
        let transposed = Matrix::from_fn(n, rows, |j, i| cols[j][i].eval(&x));
        let (_, pivots) = rref(&Rationals, &transposed);
        if pivots.len() == n {
            return None;
        }
        if best.as_ref().is_none_or(|b| pivots.len() > b.len()) {
            best = Some(pivots);
        }
    }
    let sel = best?;
    if sel.len() != n - 1 {
        return None;
    }
    let exact = |e: &[Polynomial]| combination_vanishes(e, cols);
    if let Some(e) = modular_kernel(cols, &sel, exact) {
        return Some(e);
    }
    let e: Vec<Polynomial> = (0..n)
        .map(|j| {
            let minor: Vec<Vec<Polynomial>> = sel
                .iter()
                .map(|&i| (0..n).filter(|&c| c != j).map(|c| cols[c][i].clone()).collect())
                .collect();
            let d = poly_det(minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    (!e.iter().all(Polynomial::is_zero) && exact(&e)).then_some(e)
}

/// Whether `Σ e_j·cols[j] = 0`, computed with integer coefficients.
fn combination_vanishes(e: &[Polynomial], cols: &[Vec<Polynomial>]) -> bool {
    let lift = |polys: &[&Polynomial]| -> Vec<Vec<BigInt>> {
        let all: Vec<Rational> = polys.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
        let (_, ints) = lift_to_integers(&all);
        let mut it = ints.into_iter();
        polys.iter().map(|p| it.by_ref().take(p.coeffs().len()).collect()).collect()
    };
    let e = lift(&e.iter().collect::<Vec<_>>());
    (0..cols[0].len()).all(|i| {
        let row = lift(&cols.iter().map(|c| &c[i]).collect::<Vec<_>>());
        let len = e.iter().zip(&row).map(|(a, b)| a.len() + b.len()).max().unwrap_or(0);
        let mut acc = vec![BigInt::zero(); len];
        for (a, b) in e.iter().zip(&row) {
            for (x, ax) in a.iter().enumerate() {
                if ax.is_zero() {
                    continue;
                }
                for (y, by) in b.iter().enumerate() {
                    acc[x + y] += ax * by;
                }
            }
        }
        acc.iter().all(Zero::is_zero)
    })
}

/// Primes tried before [`modular_kernel`] gives up.
const MAX_PRIMES: usize = 400;

/// The primitive kernel vector of the `sel` rows, normalized so its last
/// nonzero entry is monic, found modulo many primes. Each prime yields the
/// signed maximal minors by evaluation and interpolation, divided by their
/// gcd. Candidates are accepted only when `check` confirms them over ℚ.
fn modular_kernel(
    cols: &[Vec<Polynomial>],
    sel: &[usize],
    check: impl Fn(&[Polynomial]) -> bool,
) -> Option<Vec<Polynomial>> {
    let bound: usize = sel
        .iter()
        .map(|&i| cols.iter().map(|c| c[i].degree().max(0) as usize).max().unwrap_or(0))
        .sum();
    let mut points = 16;
    // Degree signature of the accepted primes and the accumulated residues.
    let mut shape: Option<Vec<isize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0usize;
    let mut next_try = 2usize;
    for p in primes().take(MAX_PRIMES) {
        let zp = Zp { p };
        let Some(reduced) = cols
            .iter()
            .map(|c| {
                sel.iter()
                    .map(|&i| c[i].coeffs().iter().map(|q| zp.reduce(q)).collect::<Option<Vec<u64>>>())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let Some(e) = kernel_mod_p(zp, &reduced, bound, &mut points) else {
            continue;
        };
        let sig: Vec<isize> = e.iter().map(|v| v.len() as isize - 1).collect();
        // A prime dividing a leading coefficient or enlarging the gcd gives
        // lower degrees; restart when a better signature appears.
        let better = match &shape {
            None => true,
            Some(s) => {
                let total = |v: &[isize]| v.iter().map(|&d| d + 1).sum::<isize>();
                total(&sig) > total(s) || (total(&sig) == total(s) && sig > *s)
            }
        };
        if better {
            shape = Some(sig);
            residues = e.iter().map(|v| v.iter().map(|&c| BigInt::from(c)).collect()).collect();
            modulus = BigInt::from(p);
            used = 1;
            next_try = 2;
            continue;
        }
        if shape.as_ref() != Some(&sig) {
            continue;
        }
        for (acc, v) in residues.iter_mut().zip(&e) {
            for (a, &c) in acc.iter_mut().zip(v) {
                *a = crt(a, &modulus, c, p);
            }
        }
        modulus *= p;
        used += 1;
        if used < next_try {
            continue;
        }
        next_try = used + used / 2;
        let candidate: Option<Vec<Polynomial>> = residues
            .iter()
            .map(|v| {
                v.iter()
                    .map(|a| rational_reconstruct(a, &modulus))
                    .collect::<Option<Vec<Rational>>>()
                    .map(Polynomial::new)
            })
            .collect();
        if let Some(e) = candidate {
            if check(&e) {
                return Some(e);
            }
        }
    }
    None
}

/// Extra evaluation points that confirm a reconstructed kernel.
const CHECK_POINTS: usize = 6;

/// The normalized kernel vector modulo one prime. `reduced[c][r]` is column
/// `c`, row `r`. The ratios `e_j/e_last` are recovered as rational functions
/// from values at `points` places, doubling `points` until extra places
/// confirm them; past `bound` the signed minors are interpolated directly.
fn kernel_mod_p(zp: Zp, reduced: &[Vec<Vec<u64>>], bound: usize, points: &mut usize) -> Option<Vec<Vec<u64>>> {
    let n = reduced.len();
    let rows = reduced[0].len();
    let minors_at = |x: u64| {
        let at: Vec<Vec<u64>> = reduced.iter().map(|c| c.iter().map(|poly| zp.eval(poly, x)).collect()).collect();
        let m: Vec<Vec<u64>> = (0..rows).map(|r| (0..n).map(|c| at[c][r]).collect()).collect();
        zp.signed_minors(&m)
    };
    while *points <= bound {
        let need = *points + CHECK_POINTS;
        let (mut xs, mut ks) = (Vec::with_capacity(need), vec![Vec::with_capacity(need); n - 1]);
        let mut x = 0u64;
        while xs.len() < need {
            x += 1;
            if x as usize > 2 * need + bound {
                return None;
            }
            let m = minors_at(x);
            if m[n - 1] == 0 {
                continue;
            }
            let inv = zp.inv(m[n - 1]);
            xs.push(x);
            for (k, v) in ks.iter_mut().zip(&m) {
                k.push(zp.mul(*v, inv));
            }
        }
        let fit = &xs[..*points];
        let modulus = fit.iter().fold(vec![1], |m, &x| zp.mul_poly(&m, &[zp.sub(0, x), 1]));
        let fractions: Option<Vec<(Vec<u64>, Vec<u64>)>> = ks
            .iter()
            .map(|k| {
                let a = zp.interpolate(fit, &k[..*points]);
                zp.rational_reconstruct_poly(&modulus, &a)
            })
            .collect();
        if let Some(fractions) = fractions {
            let lcm = fractions.iter().fold(vec![1], |l, (_, den)| {
                let g = zp.gcd(&l, den);
                zp.mul_poly(&l, &zp.div_rem(den, &g).0)
            });
            let mut e: Vec<Vec<u64>> = fractions
                .iter()
                .map(|(num, den)| zp.mul_poly(num, &zp.div_rem(&lcm, den).0))
                .collect();
            e.push(lcm);
            let confirmed = (*points..need).all(|i| {
                let last = zp.eval(&e[n - 1], xs[i]);
                (0..n - 1).all(|j| zp.eval(&e[j], xs[i]) == zp.mul(ks[j][i], last))
            });
            if confirmed {
                return Some(e);
            }
        }
        *points *= 2;
    }
    // Interpolate the minors themselves, then remove their gcd.
    let xs: Vec<u64> = (1..=bound as u64 + 1).collect();
    let mut values = vec![Vec::with_capacity(xs.len()); n];
    for &x in &xs {
        for (out, v) in values.iter_mut().zip(minors_at(x)) {
            out.push(v);
        }
    }
    let minors: Vec<Vec<u64>> = values.iter().map(|ys| zp.interpolate(&xs, ys)).collect();
    let g = minors.iter().fold(Vec::new(), |g, m| zp.gcd(&g, m));
    if minors[n - 1].is_empty() {
        return None;
    }
    let scale = zp.inv(*zp.div_rem(&minors[n - 1], &g).0.last().expect("nonzero quotient"));
    Some(
        minors
            .iter()
            .map(|m| zp.div_rem(m, &g).0.iter().map(|&c| zp.mul(c, scale)).collect())
            .collect(),
    )
}

/// Fraction-free (Bareiss) determinant over `ℚ[x]`.
fn poly_det(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut prev = Polynomial::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Polynomial::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// [`dfinite_multiply`] on the generating functions of two holonomic
/// sequences.
pub fn dfinite_multiply_seqs(a: &HolonomicSeq, b: &HolonomicSeq) -> Result<DfiniteProduct, GenfuncError> {
    let (opf, opg) = (holonomic_rec_to_ode(a)?, holonomic_rec_to_ode(b)?);
    let bound = opf.homogenize().order() * opg.homogenize().order();
    let len = verification_order(bound) + bound + 1;
    let (f, g) = (series_of(a, len)?, series_of(b, len)?);
    let operator = dfinite_multiply(&opf, &opg, &f, &g)?;
    Ok(DfiniteProduct { operator, bound })
}
