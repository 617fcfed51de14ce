//! Exact scalars, polynomials, rational functions and linear algebra.

pub mod linalg;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod ring;

pub use linalg::{
    determinant, echelon_kernel_vector, fraction_free_eliminate, nullspace, rank, rref, solve,
    Elimination, EliminationStatus,
};
pub use matrix::Matrix;
pub use poly::{content_factor, Polynomial};
pub use ratfunc::{clear_denominators, RationalFunction};
pub use rational::{
    binomial, factorial, lift_to_integers, parse_rational, parse_rational_list, rat, ratio, ParseRationalError, Rational,
};
pub use ring::{FieldOps, PivotClass, RationalFunctions, Rationals, RingOps};
