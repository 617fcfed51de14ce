//! Word-size prime fields, used to find exact answers by reduction modulo
//! many primes followed by Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Primes below `2^31` in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    n % 2 == 1 || n == 2
}

#[derive(Debug, Clone, Copy)]
pub struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }

    /// `None` when `p` divides the denominator.
    pub fn reduce(self, q: &Rational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        (d != 0).then(|| self.mul(self.reduce_int(q.numer()), self.inv(d)))
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Inverses of nonzero `xs` with a single exponentiation.
    pub fn batch_inv(self, xs: &[u64]) -> Vec<u64> {
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = 1;
        for &x in xs {
            prefix.push(acc);
            acc = self.mul(acc, x);
        }
        let mut inv = self.inv(acc);
        let mut out = vec![0; xs.len()];
        for i in (0..xs.len()).rev() {
            out[i] = self.mul(inv, prefix[i]);
            inv = self.mul(inv, xs[i]);
        }
        out
    }

    /// Determinant by Gaussian elimination; consumes the matrix.
    pub fn det(self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut det = 1;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            if piv != k {
                m.swap(piv, k);
                det = self.sub(0, det);
            }
            det = self.mul(det, m[k][k]);
            let inv = self.inv(m[k][k]);
            for i in k + 1..n {
                if m[i][k] == 0 {
                    continue;
                }
                let f = self.mul(m[i][k], inv);
                for j in k..n {
                    m[i][j] = self.sub(m[i][j], self.mul(f, m[k][j]));
                }
            }
        }
        det
    }

    /// `((-1)^j det(M without column j))_j` for an `r × (r+1)` matrix, the
    /// generator of its kernel given by Cramer's rule.
    pub fn signed_minors(self, m: &[Vec<u64>]) -> Vec<u64> {
        let r = m.len();
        let mut a = m.to_vec();
        let mut det = 1;
        for k in 0..r {
            let Some(piv) = (k..r).find(|&i| a[i][k] != 0) else {
                return self.signed_minors_slow(m);
            };
            if piv != k {
                a.swap(piv, k);
                det = self.sub(0, det);
            }
            det = self.mul(det, a[k][k]);
            let inv = self.inv(a[k][k]);
            for i in k + 1..r {
                if a[i][k] == 0 {
                    continue;
                }
                let f = self.mul(a[i][k], inv);
                for j in k..=r {
                    a[i][j] = self.sub(a[i][j], self.mul(f, a[k][j]));
                }
            }
        }
        // Kernel vector with last entry 1, by back substitution.
        let mut y = vec![0; r + 1];
        y[r] = 1;
        for k in (0..r).rev() {
            let s = (k + 1..=r).fold(0, |acc, j| self.add(acc, self.mul(a[k][j], y[j])));
            y[k] = self.mul(self.sub(0, s), self.inv(a[k][k]));
        }
        let scale = if r % 2 == 0 { det } else { self.sub(0, det) };
        y.iter().map(|&v| self.mul(v, scale)).collect()
    }

    fn signed_minors_slow(self, m: &[Vec<u64>]) -> Vec<u64> {
        let r = m.len();
        (0..=r)
            .map(|j| {
                let minor = m.iter().map(|row| (0..=r).filter(|&c| c != j).map(|c| row[c]).collect()).collect();
                let d = self.det(minor);
                if j % 2 == 0 {
                    d
                } else {
                    self.sub(0, d)
                }
            })
            .collect()
    }

    /// Coefficients of the polynomial through `(xs[i], ys[i])`.
    pub fn interpolate(self, xs: &[u64], ys: &[u64]) -> Vec<u64> {
        let n = xs.len();
        // Newton divided differences.
        let mut c = ys.to_vec();
        for j in 1..n {
            let invs: Vec<u64> = (j..n).map(|i| self.sub(xs[i], xs[i - j])).collect();
            let invs = self.batch_inv(&invs);
            for i in (j..n).rev() {
                let num = self.sub(c[i], c[i - 1]);
                c[i] = self.mul(num, invs[i - j]);
            }
        }
        let mut out = vec![0; n];
        for i in (0..n).rev() {
            // out = out * (x - xs[i]) + c[i]
            let mut next = vec![0; n];
            for (k, &o) in out.iter().enumerate() {
                if o == 0 {
                    continue;
                }
                if k + 1 < n {
                    next[k + 1] = self.add(next[k + 1], o);
                }
                next[k] = self.sub(next[k], self.mul(o, xs[i]));
            }
            next[0] = self.add(next[0], c[i]);
            out = next;
        }
        trim(&mut out);
        out
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.div_rem(a, b).1
    }

    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let f = self.mul(*r.last().expect("nonempty"), inv);
            q[shift] = f;
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = self.sub(r[shift + k], self.mul(f, bk));
            }
            trim(&mut r);
        }
        (q, r)
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub_poly(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
        }
        trim(&mut out);
        out
    }

    /// `(num, den)` with `den` monic and `num ≡ den·a (mod m)`, chosen
    /// where the Euclidean remainder sequence drops most in degree, which
    /// locates the unique solution when `deg num + deg den` is below
    /// `deg m` by a margin.
    pub fn rational_reconstruct_poly(self, m: &[u64], a: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
        let (mut r0, mut r1) = (m.to_vec(), self.rem(a, m));
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        if r1.is_empty() {
            return Some((Vec::new(), vec![1]));
        }
        let mut best: Option<(usize, Vec<u64>, Vec<u64>)> = None;
        while !r1.is_empty() {
            let (q, r2) = self.div_rem(&r0, &r1);
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            let drop = q.len() - 1;
            if best.as_ref().is_none_or(|b| drop > b.0) {
                // The pair (r1, t1) precedes this quotient.
                best = Some((drop, r1.clone(), t1.clone()));
            }
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        let (_, num, den) = best?;
        if den.is_empty() || self.gcd(&num, &den).len() > 1 {
            return None;
        }
        let inv = self.inv(*den.last().expect("nonzero"));
        let scale = |v: &[u64]| v.iter().map(|&c| self.mul(c, inv)).collect::<Vec<u64>>();
        Some((scale(&num), scale(&den)))
    }

    /// Monic gcd; empty for two zero inputs.
    pub fn gcd(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn monic(self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }
}

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Combines `x ≡ a (mod m)` with `x ≡ r (mod p)`; returns the residue
/// modulo `m·p` in `[0, m·p)`.
pub fn crt(a: &BigInt, m: &BigInt, r: u64, p: u64) -> BigInt {
    let zp = Zp { p };
    let a_mod = zp.reduce_int(a);
    let m_inv = zp.inv(zp.reduce_int(m));
    let k = zp.mul(zp.sub(r, a_mod), m_inv);
    a + m * BigInt::from(k)
}

/// The fraction `n/d` with `|n|, |d| ≤ √(m/2)` congruent to `a` modulo `m`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let g = r1.gcd(&t1);
    if !g.is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
