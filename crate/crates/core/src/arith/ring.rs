//! Capability bundles for the entry rings used by the linear algebra.
//!
//! Elimination code never calls arithmetic on the element type directly; it
//! goes through a [`RingOps`] value. That lets the same routines run over
//! the rationals, rational functions, and the C-finite sequence ring, where
//! deciding whether an element may serve as a pivot needs extra parameters.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::ratfunc::RationalFunction;
use super::rational::Rational;

/// How an element behaves as a candidate pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotClass {
    Zero,
    Unit,
    /// Not invertible, but multiplication by it is injective.
    NonZeroDivisor,
    ZeroDivisor,
    /// The classifier could not decide.
    Unknown,
}

impl PivotClass {
    pub fn usable(self) -> bool {
        matches!(self, PivotClass::Unit | PivotClass::NonZeroDivisor)
    }
}

pub trait RingOps {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn pivot_class(&self, a: &Self::Elem) -> PivotClass;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero_divisor(&self, a: &Self::Elem) -> bool {
        matches!(self.pivot_class(a), PivotClass::ZeroDivisor | PivotClass::Zero)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.pivot_class(a) == PivotClass::Unit
    }
}

pub trait FieldOps: RingOps {
    /// Multiplicative inverse; callers guarantee `a != 0`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The field of rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl RingOps for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn pivot_class(&self, a: &Rational) -> PivotClass {
        if a.is_zero() {
            PivotClass::Zero
        } else {
            PivotClass::Unit
        }
    }
}

impl FieldOps for Rationals {
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        a / b
    }
}

/// The field `ℚ(n)` of rational functions.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalFunctions;

impl RingOps for RationalFunctions {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::one()
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }
    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a - b
    }
    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }
    fn pivot_class(&self, a: &RationalFunction) -> PivotClass {
        if a.is_zero() {
            PivotClass::Zero
        } else {
            PivotClass::Unit
        }
    }
}

impl FieldOps for RationalFunctions {
    fn inv(&self, a: &RationalFunction) -> RationalFunction {
        a.inv()
    }
    fn div(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a / b
    }
}
