use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{FieldOps, PivotClass, Polynomial, Rational, RingOps};

/// An element of `ℚ[t]/(μ)` for a squarefree modulus `μ`, stored as its
/// reduced residue.
///
/// Only irreducible moduli give a field; [`AlgebraicField`] relies on that
/// for inverses.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicScalar {
    modulus: Polynomial,
    residue: Polynomial,
}

impl AlgebraicScalar {
    pub fn new(modulus: &Polynomial, residue: Polynomial) -> Self {
        assert!(modulus.degree() >= 1, "modulus must be non-constant");
        let residue = residue.div_rem(modulus).1;
        AlgebraicScalar {
            modulus: modulus.clone(),
            residue,
        }
    }

    pub fn rational(modulus: &Polynomial, c: Rational) -> Self {
        Self::new(modulus, Polynomial::constant(c))
    }

    /// The class of `t`.
    pub fn generator(modulus: &Polynomial) -> Self {
        Self::new(modulus, Polynomial::x())
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn residue(&self) -> &Polynomial {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// The value when the residue is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.residue.degree() <= 0).then(|| self.residue.coeff(0))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::rational(&self.modulus, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    /// Multiplicative inverse; `None` for zero or a zero divisor.
    pub fn inv(&self) -> Option<Self> {
        let (g, s, _) = self.residue.extended_gcd(&self.modulus);
        if g.degree() != 0 {
            return None;
        }
        let c = g.coeff(0).recip();
        Some(Self::new(&self.modulus, s.scale(&c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.modulus, self.residue.scale(c))
    }
}

impl Add for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar::new(&self.modulus, &self.residue + &rhs.residue)
    }
}

impl Sub for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar::new(&self.modulus, &self.residue - &rhs.residue)
    }
}

impl Mul for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        AlgebraicScalar::new(&self.modulus, &self.residue * &rhs.residue)
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar::new(&self.modulus, -&self.residue)
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residue.degree() <= 0 {
            write!(f, "{}", self.residue.coeff(0))
        } else {
            write!(f, "({})", self.residue.display_with("t"))
        }
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod ({})", self.modulus.display_with("t"))
    }
}

/// `ℚ[t]/(μ)` as an entry field for the linear algebra. `μ` must be
/// irreducible.
#[derive(Debug, Clone)]
pub struct AlgebraicField {
    pub modulus: Polynomial,
}

impl AlgebraicField {
    pub fn new(modulus: Polynomial) -> Self {
        AlgebraicField { modulus }
    }

    pub fn from_rational(&self, c: Rational) -> AlgebraicScalar {
        AlgebraicScalar::rational(&self.modulus, c)
    }

    pub fn generator(&self) -> AlgebraicScalar {
        AlgebraicScalar::generator(&self.modulus)
    }
}

impl RingOps for AlgebraicField {
    type Elem = AlgebraicScalar;

    fn zero(&self) -> AlgebraicScalar {
        self.from_rational(Rational::zero())
    }
    fn one(&self) -> AlgebraicScalar {
        self.from_rational(Rational::one())
    }
    fn add(&self, a: &AlgebraicScalar, b: &AlgebraicScalar) -> AlgebraicScalar {
        a + b
    }
    fn mul(&self, a: &AlgebraicScalar, b: &AlgebraicScalar) -> AlgebraicScalar {
        a * b
    }
    fn neg(&self, a: &AlgebraicScalar) -> AlgebraicScalar {
        -a
    }
    fn sub(&self, a: &AlgebraicScalar, b: &AlgebraicScalar) -> AlgebraicScalar {
        a - b
    }
    fn is_zero(&self, a: &AlgebraicScalar) -> bool {
        a.is_zero()
    }
    fn pivot_class(&self, a: &AlgebraicScalar) -> PivotClass {
        if a.is_zero() {
            PivotClass::Zero
        } else if a.inv().is_some() {
            PivotClass::Unit
        } else {
            PivotClass::ZeroDivisor
        }
    }
}

impl FieldOps for AlgebraicField {
    fn inv(&self, a: &AlgebraicScalar) -> AlgebraicScalar {
        a.inv().expect("inverse of a non-unit")
    }
}
