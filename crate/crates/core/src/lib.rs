pub mod arith;
pub mod closure;
pub mod genfunc;
pub mod guess;
pub mod prover;
pub mod seq;
