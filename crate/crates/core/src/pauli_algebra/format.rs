//! Plain-text check-matrix files.
//!
//! ```text
//! # comment
//! n k m
//! <2n bits, X half then Z half>   (m lines)
//! ```
//! Bits may be space separated or run together.

use std::fmt::Write as _;

use thiserror::Error;

use super::gf2::BitVec;
use super::{CheckMatrix, PauliVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty check-matrix file")]
    Empty,
    #[error("line {line}: header must be `n k m`, got {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: invalid bit token {token:?}")]
    BadBit { line: usize, token: String },
    #[error("line {line}: expected {expected} bits, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// Parsed file contents: `(n, k, check)`.
pub fn parse_check_matrix(text: &str) -> Result<(usize, usize, CheckMatrix), FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| FormatError::BadHeader {
            line: hline,
            text: header.to_string(),
        })?;
    let [n, k, m] = nums[..] else {
        return Err(FormatError::BadHeader {
            line: hline,
            text: header.to_string(),
        });
    };

    let mut rows = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut bits = BitVec::zeros(0);
        for token in text.split_whitespace() {
            let parsed = BitVec::parse_bit_string(token).ok_or_else(|| FormatError::BadBit {
                line,
                token: token.to_string(),
            })?;
            for b in parsed.iter() {
                bits.push(b);
            }
        }
        if bits.len() != 2 * n {
            return Err(FormatError::RowLength {
                line,
                expected: 2 * n,
                found: bits.len(),
            });
        }
        rows.push(PauliVector::from_symplectic(&bits).expect("even length"));
    }
    if rows.len() != m {
        return Err(FormatError::RowCount {
            expected: m,
            found: rows.len(),
        });
    }
    let check = CheckMatrix::new(n, rows).expect("row lengths checked");
    Ok((n, k, check))
}

pub fn write_check_matrix(check: &CheckMatrix, k: usize, comment: Option<&str>) -> String {
    let n = check.n();
    let mut out = String::with_capacity(check.m() * (4 * n + 1) + 32);
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "{} {} {}", n, k, check.m());
    for row in check.rows() {
        let mut first = true;
        for b in row.x_bits().iter().chain(row.z_bits().iter()) {
            if !first {
                out.push(' ');
            }
            out.push(if b { '1' } else { '0' });
            first = false;
        }
        out.push('\n');
    }
    out
}
