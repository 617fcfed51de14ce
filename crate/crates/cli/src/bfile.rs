//! OEIS-style b-files: one `n value` pair per line, `#` comments.

use std::path::Path;

use ansatz::arith::parse_rational;
use ansatz::seq::TermVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BfileError {
    #[error("line {0}: expected \"n value\"")]
    MalformedLine(usize),
    #[error("line {0}: index does not follow the previous one")]
    NonConsecutiveIndex(usize),
    #[error("no terms found")]
    Empty,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Parses b-file text. Line numbers in errors are 1-based.
pub fn parse_bfile_str(text: &str) -> Result<TermVector, BfileError> {
    let mut start = None;
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(BfileError::MalformedLine(lineno));
        };
        let n: usize = n.parse().map_err(|_| BfileError::MalformedLine(lineno))?;
        let v = parse_rational(v).map_err(|_| BfileError::MalformedLine(lineno))?;
        match start {
            None => start = Some(n),
            Some(s) if n != s + terms.len() => return Err(BfileError::NonConsecutiveIndex(lineno)),
            Some(_) => {}
        }
        terms.push(v);
    }
    let start = start.ok_or(BfileError::Empty)?;
    Ok(TermVector::new(start, terms))
}

pub fn parse_bfile(path: &Path) -> Result<TermVector, BfileError> {
    let text = std::fs::read_to_string(path).map_err(|e| BfileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_bfile_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ansatz::arith::{rat, ratio};

    #[test]
    fn parses_consecutive_lines() {
        let t = parse_bfile_str("0 1\n1 1\n2 2\n3 6\n4 30").unwrap();
        assert_eq!(t, TermVector::from_ints(0, &[1, 1, 2, 6, 30]));
    }

    #[test]
    fn skips_comments_and_keeps_start() {
        let t = parse_bfile_str("# header\n\n5 1/2\n6 -3\n# trailing\n").unwrap();
        assert_eq!(t.start, 5);
        assert_eq!(t.terms, vec![ratio(1, 2), rat(-3)]);
        let big = parse_bfile_str("0 123456789012345678901234567890").unwrap();
        assert_eq!(big.terms[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        assert_eq!(parse_bfile_str("0 1\n2 5"), Err(BfileError::NonConsecutiveIndex(2)));
        assert_eq!(parse_bfile_str("0 1\nx 5"), Err(BfileError::MalformedLine(2)));
        assert_eq!(parse_bfile_str("0 1 2"), Err(BfileError::MalformedLine(1)));
        assert_eq!(parse_bfile_str("# only a comment"), Err(BfileError::Empty));
    }
}
