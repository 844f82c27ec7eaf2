//! Plain-text matrix format.
//!
//! ```text
//! n=3 k=2
//! 101
//! 010
//! ```
//!
//! A header `n=<n> k=<k>` followed by `k` rows of `n` symbols from
//! `{0, 1, a, b}` (a = α, b = α²), each newline-terminated with no trailing
//! whitespace. A stream of codes is a concatenation of such records; blank
//! lines between records are ignored on input.

use crate::error::{Error, Result};
use crate::reverse::{ReverseSpace, ReversibleCode};
use crate::subspace::Subspace;
use crate::vector::GfVector;

pub fn emit_rows(n: usize, rows: &[GfVector]) -> String {
    let mut out = format!("n={n} k={}\n", rows.len());
    for r in rows {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn emit_subspace(s: &Subspace) -> String {
    emit_rows(s.n(), s.basis())
}

pub fn emit_code(code: &ReversibleCode) -> String {
    emit_subspace(code.space())
}

fn parse_header(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let bad = || Error::syntax(lineno, format!("expected header `n=<n> k=<k>`, found {line:?}"));
    let (n_part, k_part) = line.split_once(' ').ok_or_else(bad)?;
    let n = n_part.strip_prefix("n=").and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let k = k_part.strip_prefix("k=").and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    Ok((n, k))
}

fn parse_row(line: &str, n: usize, lineno: usize) -> Result<GfVector> {
    if line.chars().count() != n {
        return Err(Error::syntax(
            lineno,
            format!("expected {n} symbols, found {}", line.chars().count()),
        ));
    }
    line.parse::<GfVector>()
        .map_err(|_| Error::syntax(lineno, format!("invalid symbol in row {line:?}")))
}

/// Parses every record in `text`, returning each record's length and rows
/// as written.
pub fn parse_matrices(text: &str) -> Result<Vec<(usize, Vec<GfVector>)>> {
    let mut out = Vec::new();
    let mut lines = text.split('\n').enumerate().peekable();
    loop {
        while let Some((_, l)) = lines.peek() {
            if l.is_empty() {
                lines.next();
            } else {
                break;
            }
        }
        let Some((idx, header)) = lines.next() else {
            break;
        };
        let (n, k) = parse_header(header, idx + 1)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            match lines.next() {
                Some((i, l)) if !l.is_empty() => rows.push(parse_row(l, n, i + 1)?),
                _ => {
                    return Err(Error::syntax(
                        idx + 1,
                        format!("record declares {k} rows, found {}", rows.len()),
                    ))
                }
            }
        }
        out.push((n, rows));
    }
    Ok(out)
}

pub fn parse_records(text: &str) -> Result<Vec<Subspace>> {
    parse_matrices(text)?
        .into_iter()
        .map(|(n, rows)| Subspace::from_rows(n, rows))
        .collect()
}

/// Parses exactly one record.
pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let mut recs = parse_records(text)?;
    match recs.len() {
        1 => Ok(recs.pop().unwrap()),
        0 => Err(Error::syntax(1, "empty input")),
        k => Err(Error::syntax(1, format!("expected one record, found {k}"))),
    }
}

/// Parses one record and checks that it spans a reversible code.
pub fn parse_code(text: &str) -> Result<ReversibleCode> {
    let space = parse_subspace(text)?;
    let rs = ReverseSpace::new(space.n())?;
    ReversibleCode::new(space, &rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reverse::IsoType;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_code("n=2 k=1\n10\n"), Err(Error::NotInvariant));
        let code = parse_code("n=3 k=1\n111\n").unwrap();
        assert_eq!(code.iso_type(), IsoType::new(0, 1));
        assert!(code.contains_one());
    }

    #[test]
    fn emit_parse_identity_on_canonical_text() {
        let text = "n=4 k=2\n1001\n0110\n";
        let code = parse_code(text).unwrap();
        assert_eq!(emit_code(&code), text);
        assert_eq!(emit_subspace(&Subspace::zero(3)), "n=3 k=0\n");
        assert_eq!(parse_subspace("n=3 k=0\n").unwrap(), Subspace::zero(3));
    }

    #[test]
    fn non_canonical_rows_are_canonicalized() {
        let s = parse_subspace("n=3 k=2\naaa\n010\n").unwrap();
        assert_eq!(emit_subspace(&s), "n=3 k=2\n101\n010\n");
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "n=3\n111\n",
            "n=3 k=1\n11\n",
            "n=3 k=1\n11x\n",
            "n=3 k=2\n111\n",
            "n=3 k=1\n111 \n",
            "x=3 k=1\n111\n",
            "",
        ] {
            assert!(matches!(parse_subspace(bad), Err(Error::Syntax { .. })), "{bad:?}");
        }
    }

    #[test]
    fn multiple_records() {
        let text = "n=2 k=1\n11\nn=2 k=2\n10\n01\n\nn=2 k=0\n";
        let recs = parse_records(text).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[1], Subspace::full(2));
        assert!(parse_subspace(text).is_err());
    }
}
