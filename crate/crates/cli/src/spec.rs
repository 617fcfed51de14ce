//! Textual sequence specifications accepted on the command line.
//!
//! A SPEC is one of
//! * `rec:1,-3,2;init:2,3[;start:S]`: a C-finite sequence given by its
//!   annihilator coefficients and initial terms,
//! * a JSON model line as written by `--json`,
//! * `@path`: the first non-blank line of a file, in either form above.

use ansatz::arith::{parse_rational_list, rat};
use ansatz::guess::Conjecture;
use ansatz::seq::{CFiniteSeq, HolonomicSeq, XRecursiveSeq};

use crate::model::ModelJson;

pub fn parse_cfinite_spec(text: &str) -> Result<(CFiniteSeq, usize), String> {
    let mut rec = None;
    let mut init = None;
    let mut start = 0;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some(r) = part.strip_prefix("rec:") {
            rec = Some(parse_rational_list(r).map_err(|e| format!("rec: {e}"))?);
        } else if let Some(i) = part.strip_prefix("init:") {
            init = Some(parse_rational_list(i).map_err(|e| format!("init: {e}"))?);
        } else if let Some(s) = part.strip_prefix("start:") {
            start = s.trim().parse().map_err(|_| format!("start: '{s}' is not an index"))?;
        } else {
            return Err(format!("unknown spec part '{part}'"));
        }
    }
    let (Some(rec), Some(init)) = (rec, init) else {
        return Err("spec needs rec:... and init:...".into());
    };
    let seq = CFiniteSeq::new(rec, init).map_err(|e| e.to_string())?;
    Ok((seq, start))
}

pub fn parse_model_spec(text: &str) -> Result<Conjecture, String> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        let content = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let line = content
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| format!("{path} is empty"))?;
        return parse_model_spec(line);
    }
    if text.starts_with('{') {
        return ModelJson::parse(text)
            .and_then(|m| m.to_conjecture())
            .map_err(|e| e.to_string());
    }
    let (seq, start) = parse_cfinite_spec(text)?;
    Ok(Conjecture::CFinite { seq, start })
}

/// Parses `NAME=SPEC`.
pub fn parse_named(text: &str) -> Result<(String, CFiniteSeq), String> {
    let (name, spec) = text
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=rec:...;init:..., got '{text}'"))?;
    let (seq, start) = parse_cfinite_spec(spec)?;
    if start != 0 {
        return Err("named atoms are indexed from 0".into());
    }
    Ok((name.trim().to_string(), seq))
}

/// C-finite models (including polynomials) as `(sequence, start)`.
pub fn as_cfinite(c: &Conjecture) -> Option<(CFiniteSeq, usize)> {
    match c {
        Conjecture::Polynomial(p) => Some((p.to_cfinite(), 0)),
        Conjecture::CFinite { seq, start } => Some((seq.clone(), *start)),
        _ => None,
    }
}

/// Reads a C-finite sequence with constant coefficients as a holonomic one.
pub fn cfinite_to_holonomic(seq: &CFiniteSeq, start: usize) -> Result<HolonomicSeq, String> {
    let polys = seq
        .annihilator()
        .iter()
        .map(|c| ansatz::arith::Polynomial::constant(c.clone()))
        .collect();
    HolonomicSeq::new(polys, seq.initials().to_vec(), start, start + seq.order()).map_err(|e| e.to_string())
}

pub fn cfinite_to_xrecursive(seq: &CFiniteSeq, start: usize) -> Result<XRecursiveSeq, String> {
    let (ann, init) = if seq.order() == 0 {
        (vec![rat(1), rat(0)], vec![rat(0)])
    } else {
        (seq.annihilator().to_vec(), seq.initials().to_vec())
    };
    let coeffs = ann.into_iter().map(CFiniteSeq::constant).collect();
    let k = init.len();
    XRecursiveSeq::new(coeffs, init, start, start + k).map_err(|e| e.to_string())
}

pub fn as_holonomic(c: &Conjecture) -> Result<HolonomicSeq, String> {
    match c {
        Conjecture::Holonomic(h) => Ok(h.clone()),
        Conjecture::XRecursive(_) => Err("an X-recursive model cannot be read as holonomic".into()),
        other => {
            let (seq, start) = as_cfinite(other).expect("C-finite class");
            cfinite_to_holonomic(&seq, start)
        }
    }
}

pub fn as_xrecursive(c: &Conjecture) -> Result<XRecursiveSeq, String> {
    match c {
        Conjecture::XRecursive(x) => Ok(x.clone()),
        Conjecture::Holonomic(_) => Err("a holonomic model cannot be read as X-recursive".into()),
        other => {
            let (seq, start) = as_cfinite(other).expect("C-finite class");
            cfinite_to_xrecursive(&seq, start)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cfinite_spec_forms() {
        let (s, start) = parse_cfinite_spec("rec:1,-3,2;init:2,3").unwrap();
        assert_eq!(s, CFiniteSeq::from_ints(&[1, -3, 2], &[2, 3]).unwrap());
        assert_eq!(start, 0);
        let (_, start) = parse_cfinite_spec(" rec:1,-1 ; init:5 ; start:3 ").unwrap();
        assert_eq!(start, 3);
        assert!(parse_cfinite_spec("rec:1,-1").is_err());
        assert!(parse_cfinite_spec("rec:1,-1;init:1;bogus:2").is_err());
        assert!(parse_named("G=rec:1,-2;init:1").is_ok());
        assert!(parse_named("rec:1,-2;init:1").is_err());
    }

    #[test]
    fn promotions_keep_terms() {
        let f = CFiniteSeq::fibonacci();
        let h = cfinite_to_holonomic(&f, 0).unwrap();
        assert_eq!(h.terms(15).unwrap().terms, f.terms(15));
        let x = cfinite_to_xrecursive(&f, 0).unwrap();
        assert_eq!(x.terms(15).unwrap().terms, f.terms(15));
        let z = cfinite_to_xrecursive(&CFiniteSeq::zero(), 0).unwrap();
        assert!(z.terms(5).unwrap().terms.iter().all(|v| *v == rat(0)));
    }

    #[test]
    fn json_and_file_specs() {
        let c = Conjecture::CFinite {
            seq: CFiniteSeq::lucas(),
            start: 0,
        };
        let line = ModelJson::from_conjecture(&c, None).to_line();
        assert_eq!(parse_model_spec(&line).unwrap(), c);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.jsonl");
        std::fs::write(&path, format!("\n{line}\n")).unwrap();
        assert_eq!(parse_model_spec(&format!("@{}", path.display())).unwrap(), c);
        assert!(parse_model_spec("@/nonexistent/file").is_err());
    }
}
