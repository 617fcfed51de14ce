//! Structured (JSON) form of guessed or constructed models.

use ansatz::arith::{parse_rational, Polynomial, Rational};
use ansatz::guess::Conjecture;
use ansatz::seq::{CFiniteSeq, HolonomicSeq, PolySeq, XRecursiveSeq};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFiniteJson {
    pub annihilator: Vec<String>,
    pub initials: Vec<String>,
}

/// One model per JSON line. The class-specific field (`poly`,
/// `annihilator`, `polys` or `coeffs`) carries everything needed to rebuild
/// it; `recurrence` is informational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub class: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<isize>,
    pub recurrence: String,
    pub start: usize,
    pub offset: usize,
    pub initials: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<CFiniteJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid model: {0}")]
pub struct ModelError(pub String);

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn rationals(v: &[String]) -> Result<Vec<Rational>, ModelError> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| ModelError(format!("'{s}': {e}"))))
        .collect()
}

fn cfinite_json(c: &CFiniteSeq) -> CFiniteJson {
    CFiniteJson {
        annihilator: strings(c.annihilator()),
        initials: strings(c.initials()),
    }
}

fn cfinite_from(c: &CFiniteJson) -> Result<CFiniteSeq, ModelError> {
    CFiniteSeq::new(rationals(&c.annihilator)?, rationals(&c.initials)?).map_err(|e| ModelError(e.to_string()))
}

/// The recurrence line without the class prefix.
pub fn recurrence_of(c: &Conjecture) -> String {
    match c {
        Conjecture::Polynomial(p) => format!("a(n) = {}", p.poly.display_with("n")),
        Conjecture::CFinite { seq, .. } => seq.recurrence_string(),
        Conjecture::Holonomic(h) => h.recurrence_string(),
        Conjecture::XRecursive(x) => x.recurrence_string(),
    }
}

impl ModelJson {
    pub fn from_conjecture(c: &Conjecture, verified_terms: Option<usize>) -> Self {
        let mut m = ModelJson {
            class: c.class().to_string(),
            order: c.order(),
            degree: None,
            recurrence: recurrence_of(c),
            start: c.start(),
            offset: c.start(),
            initials: Vec::new(),
            verified_terms,
            poly: None,
            annihilator: None,
            polys: None,
            coeffs: None,
        };
        match c {
            Conjecture::Polynomial(p) => {
                m.degree = Some(p.degree());
                m.poly = Some(strings(p.poly.coeffs()));
            }
            Conjecture::CFinite { seq, start } => {
                m.degree = Some(0);
                m.offset = start + seq.order();
                m.initials = strings(seq.initials());
                m.annihilator = Some(strings(seq.annihilator()));
            }
            Conjecture::Holonomic(h) => {
                m.degree = Some(h.degree());
                m.offset = h.offset;
                m.initials = strings(&h.initials);
                m.polys = Some(h.polys.iter().map(|p| strings(p.coeffs())).collect());
            }
            Conjecture::XRecursive(x) => {
                m.offset = x.offset;
                m.initials = strings(&x.initials);
                m.coeffs = Some(x.coeffs.iter().map(cfinite_json).collect());
            }
        }
        m
    }

    pub fn to_conjecture(&self) -> Result<Conjecture, ModelError> {
        let missing = |field: &str| ModelError(format!("class {} needs field '{field}'", self.class));
        let initials = rationals(&self.initials)?;
        match self.class.as_str() {
            "polynomial" => {
                let poly = self.poly.as_ref().ok_or_else(|| missing("poly"))?;
                Ok(Conjecture::Polynomial(PolySeq::new(Polynomial::new(rationals(poly)?))))
            }
            "C-finite" => {
                let ann = self.annihilator.as_ref().ok_or_else(|| missing("annihilator"))?;
                let seq = CFiniteSeq::new(rationals(ann)?, initials).map_err(|e| ModelError(e.to_string()))?;
                Ok(Conjecture::CFinite {
                    seq,
                    start: self.start,
                })
            }
            "holonomic" => {
                let polys = self.polys.as_ref().ok_or_else(|| missing("polys"))?;
                let polys = polys
                    .iter()
                    .map(|p| rationals(p).map(Polynomial::new))
                    .collect::<Result<Vec<_>, _>>()?;
                HolonomicSeq::new(polys, initials, self.start, self.offset)
                    .map(Conjecture::Holonomic)
                    .map_err(|e| ModelError(e.to_string()))
            }
            "X-recursive" => {
                let coeffs = self.coeffs.as_ref().ok_or_else(|| missing("coeffs"))?;
                let coeffs = coeffs.iter().map(cfinite_from).collect::<Result<Vec<_>, _>>()?;
                XRecursiveSeq::new(coeffs, initials, self.start, self.offset)
                    .map(Conjecture::XRecursive)
                    .map_err(|e| ModelError(e.to_string()))
            }
            other => Err(ModelError(format!("unknown class '{other}'"))),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn parse(line: &str) -> Result<Self, ModelError> {
        serde_json::from_str(line).map_err(|e| ModelError(e.to_string()))
    }
}
