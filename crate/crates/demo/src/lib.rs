//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each function takes the text of one input box and returns the text to
//! display, so the page needs no JSON handling.

use std::fmt::Write;

use ansatz::arith::parse_rational_list;
use ansatz::guess::{guess_any, GuessConfig};
use ansatz::prover::{parse_expr, parse_identity, prove_identity, Env};
use ansatz::seq::{cfinite_is_zero_divisor, TermVector, DEFAULT_MAX_PERIOD, DEFAULT_SCAN};
use wasm_bindgen::prelude::wasm_bindgen;

/// Guesses a recurrence for comma-separated terms starting at index 0.
#[wasm_bindgen]
pub fn guess(terms: &str) -> String {
    let values = match parse_rational_list(terms) {
        Ok(v) if !v.is_empty() => v,
        Ok(_) => return "error: no terms given".into(),
        Err(e) => return format!("error: {e}"),
    };
    let data = TermVector::from_zero(values);
    match guess_any(&data, &GuessConfig::default()) {
        Ok(c) => {
            let mut out = format!("{c}\n");
            let _ = write!(out, "  conjectured from {} terms", data.len());
            out
        }
        Err(e) => format!("no fit: {e}"),
    }
}

/// Atoms from lines `NAME=rec:1,c1,..;init:a0,..`, on top of `F` and `L`.
fn environment(defines: &str) -> Result<Env, String> {
    let mut env = Env::default();
    for line in defines.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (name, spec) = line
            .split_once('=')
            .ok_or_else(|| format!("error: expected NAME=rec:...;init:..., got '{line}'"))?;
        env.define(name.trim(), spec.trim())
            .map_err(|e| format!("error: {}: {}", name.trim(), e.message))?;
    }
    Ok(env)
}

/// Proves or refutes an identity such as `F(2n) = F(n)*L(n)`; `defines`
/// holds extra atoms, one per line.
#[wasm_bindgen]
pub fn prove(identity: &str, defines: &str) -> String {
    let env = match environment(defines) {
        Ok(env) => env,
        Err(e) => return e,
    };
    let (lhs, rhs) = match parse_identity(identity, &env) {
        Ok(sides) => sides,
        Err(e) => return format!("error: {e}"),
    };
    match prove_identity(&lhs, &rhs) {
        Ok(proof) => {
            let mut out = proof.to_string();
            for (n, v) in &proof.transcript {
                let _ = write!(out, "\n  n={n}: {v}");
            }
            out
        }
        Err(e) => format!("error: {e}"),
    }
}

/// Classifies a C-finite expression in `n` as a unit or a zero divisor.
#[wasm_bindgen]
pub fn zdtest(expr: &str, defines: &str) -> String {
    let env = match environment(defines) {
        Ok(env) => env,
        Err(e) => return e,
    };
    match parse_expr(expr, &env) {
        Ok(e) => cfinite_is_zero_divisor(&e.to_cfinite(), DEFAULT_SCAN, DEFAULT_MAX_PERIOD).to_string(),
        Err(e) => format!("error: {e}"),
    }
}
