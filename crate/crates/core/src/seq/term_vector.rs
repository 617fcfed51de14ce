use crate::arith::Rational;

/// A finite run of consecutive terms `a(start), a(start+1), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermVector {
    pub start: usize,
    pub terms: Vec<Rational>,
}

impl TermVector {
    pub fn new(start: usize, terms: Vec<Rational>) -> Self {
        TermVector { start, terms }
    }

    pub fn from_zero(terms: Vec<Rational>) -> Self {
        Self::new(0, terms)
    }

    pub fn from_ints(start: usize, values: &[i64]) -> Self {
        Self::new(start, values.iter().map(|&v| crate::arith::rat(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// One past the last index.
    pub fn end(&self) -> usize {
        self.start + self.terms.len()
    }

    /// Term at absolute index `n`, if present.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(self.start).and_then(|i| self.terms.get(i))
    }

    pub fn at(&self, n: usize) -> &Rational {
        self.get(n)
            .unwrap_or_else(|| panic!("index {n} outside term vector [{}, {})", self.start, self.end()))
    }

    pub fn map(&self, f: impl FnMut(&Rational) -> Rational) -> TermVector {
        TermVector::new(self.start, self.terms.iter().map(f).collect())
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.end()
    }
}
