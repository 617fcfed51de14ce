//! Recognizing sequences from finite prefixes.
//!
//! Every guesser solves an exact linear system that is overdetermined by at
//! least `margin` equations and returns the first model in a fixed search
//! order. A returned model reproduces all of its input terms but remains a
//! conjecture; only the prover certifies identities.

mod cfinite;
mod diagnostic;
mod holonomic;
mod polynomial;
mod xrecursive;

pub use cfinite::guess_cfinite;
pub use diagnostic::{guess_diagnostic, GuessDiagnostic};
pub use holonomic::guess_holonomic;
pub use polynomial::guess_polynomial;
pub use xrecursive::{guess_xrecursive_dict, guess_xrecursive_first_order};

use std::fmt;

use crate::seq::{CFiniteSeq, HolonomicSeq, PolySeq, TermVector, XRecursiveSeq};

/// A named coefficient atom for the dictionary strategy, read at the
/// absolute index `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisAtom {
    pub name: String,
    pub seq: CFiniteSeq,
}

impl BasisAtom {
    pub fn new(name: impl Into<String>, seq: CFiniteSeq) -> Self {
        BasisAtom {
            name: name.into(),
            seq,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessConfig {
    pub max_order: usize,
    /// Coefficient degree bound for holonomic guessing.
    pub max_degree: usize,
    /// Equations required beyond the number of unknowns.
    pub margin: usize,
    /// Coefficient atoms for [`guess_xrecursive_dict`].
    pub basis: Vec<BasisAtom>,
    /// Leading ratios the first-order strategy may ignore.
    pub max_skip: usize,
}

impl Default for GuessConfig {
    fn default() -> Self {
        GuessConfig {
            max_order: 8,
            max_degree: 4,
            margin: 5,
            basis: Vec::new(),
            max_skip: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GuessError {
    #[error("no model fits the data within the configured bounds")]
    NoFit,
    #[error("insufficient data: need at least {needed} terms, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("term a({0}) is zero, so the ratio is undefined")]
    ZeroTermInData(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// A guessed model from any of the classes. C-finite models from data not
/// starting at 0 are indexed relative to `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjecture {
    Polynomial(PolySeq),
    CFinite { seq: CFiniteSeq, start: usize },
    Holonomic(HolonomicSeq),
    XRecursive(XRecursiveSeq),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ansatz {
    Polynomial,
    CFinite,
    Holonomic,
    XRecursive,
}

impl Conjecture {
    pub fn class(&self) -> Ansatz {
        match self {
            Conjecture::Polynomial(_) => Ansatz::Polynomial,
            Conjecture::CFinite { .. } => Ansatz::CFinite,
            Conjecture::Holonomic(_) => Ansatz::Holonomic,
            Conjecture::XRecursive(_) => Ansatz::XRecursive,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Conjecture::Polynomial(p) => (p.degree() + 1) as usize,
            Conjecture::CFinite { seq, .. } => seq.order(),
            Conjecture::Holonomic(h) => h.order(),
            Conjecture::XRecursive(x) => x.order(),
        }
    }

    /// Terms from the model's first index.
    pub fn terms(&self, count: usize) -> Option<TermVector> {
        match self {
            Conjecture::Polynomial(p) => Some(p.terms(count)),
            Conjecture::CFinite { seq, start } => Some(TermVector::new(*start, seq.terms(count))),
            Conjecture::Holonomic(h) => h.terms(count).ok(),
            Conjecture::XRecursive(x) => x.terms(count).ok(),
        }
    }

    pub fn start(&self) -> usize {
        match self {
            Conjecture::Polynomial(_) => 0,
            Conjecture::CFinite { start, .. } => *start,
            Conjecture::Holonomic(h) => h.start,
            Conjecture::XRecursive(x) => x.start,
        }
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ansatz::Polynomial => "polynomial",
            Ansatz::CFinite => "C-finite",
            Ansatz::Holonomic => "holonomic",
            Ansatz::XRecursive => "X-recursive",
        })
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjecture::Polynomial(p) => {
                write!(f, "polynomial, degree {}: a(n) = {}", p.degree(), p.poly.display_with("n"))
            }
            Conjecture::CFinite { seq, .. } => {
                write!(f, "C-finite, order {}: {}", seq.order(), seq.recurrence_string())
            }
            Conjecture::Holonomic(h) => write!(
                f,
                "holonomic, order {}, degree {}: {}",
                h.order(),
                h.degree(),
                h.recurrence_string()
            ),
            Conjecture::XRecursive(x) => {
                write!(f, "X-recursive, order {}: {}", x.order(), x.recurrence_string())
            }
        }
    }
}

/// Tries the classes in the order polynomial, C-finite, holonomic,
/// X-recursive and returns the first fit. The X-recursive stage uses the
/// dictionary strategy when a basis is configured and the ratio strategy
/// otherwise.
pub fn guess_any(data: &TermVector, cfg: &GuessConfig) -> Result<Conjecture, GuessError> {
    let mut insufficient = None;
    let mut posed = false;
    for ansatz in [Ansatz::Polynomial, Ansatz::CFinite, Ansatz::Holonomic, Ansatz::XRecursive] {
        match guess_as(ansatz, data, cfg) {
            Ok(c) => return Ok(c),
            Err(e @ GuessError::InsufficientData { .. }) => insufficient = insufficient.or(Some(e)),
            Err(_) => posed = true,
        }
    }
    Err(match insufficient {
        Some(e) if !posed => e,
        _ => GuessError::NoFit,
    })
}

pub fn guess_as(ansatz: Ansatz, data: &TermVector, cfg: &GuessConfig) -> Result<Conjecture, GuessError> {
    match ansatz {
        Ansatz::Polynomial => guess_polynomial(data, cfg).map(Conjecture::Polynomial),
        Ansatz::CFinite => guess_cfinite(data, cfg).map(|seq| Conjecture::CFinite {
            seq,
            start: data.start,
        }),
        Ansatz::Holonomic => guess_holonomic(data, cfg).map(Conjecture::Holonomic),
        Ansatz::XRecursive => if cfg.basis.is_empty() {
            guess_xrecursive_first_order(data, cfg)
        } else {
            guess_xrecursive_dict(data, cfg)
        }
        .map(Conjecture::XRecursive),
    }
}
