//! Plain-text formats for integer matrices and Latin squares.
//!
//! Matrices: a `<rows> <cols>` header, then one row per line as
//! space-separated decimal integers. A row made only of `+` and `-` is read
//! as ±1 entries. Output is always decimal.
//!
//! Latin squares: an `<order> <min-symbol>` header, then the rows.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::latin::LatinSquare;
use crate::matrix::IntMatrix;

/// 1-based position of a parse failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

fn perr(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

/// Non-empty lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).filter(|(_, l)| !l.trim().is_empty())
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn header(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let t = tokens(line);
    if t.len() != 2 {
        return Err(perr(line_no, 1, format!("expected a two-number header, found {} fields", t.len())));
    }
    let num = |(col, s): (usize, &str)| s.parse::<usize>().map_err(|_| perr(line_no, col, format!("bad count {s:?}")));
    Ok((num(t[0])?, num(t[1])?))
}

fn sign_row(line: &str) -> Option<Vec<i64>> {
    let compact: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
    (!compact.is_empty() && compact.iter().all(|&c| c == '+' || c == '-'))
        .then(|| compact.iter().map(|&c| if c == '+' { 1 } else { -1 }).collect())
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| perr(1, 1, "empty input"))?;
    let (rows, cols) = header(hl, h)?;
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    let mut last_line = hl;
    for (ln, line) in lines {
        last_line = ln;
        if seen == rows {
            return Err(perr(ln, 1, format!("more than {rows} rows")));
        }
        let row: Vec<i64> = match sign_row(line) {
            Some(r) => r,
            None => tokens(line)
                .into_iter()
                .map(|(col, s)| s.parse::<i64>().map_err(|_| perr(ln, col, format!("bad entry {s:?}"))))
                .collect::<Result<_, _>>()?,
        };
        if row.len() != cols {
            return Err(perr(ln, 1, format!("row has {} entries, expected {cols}", row.len())));
        }
        data.extend(row);
        seen += 1;
    }
    if seen != rows {
        return Err(perr(last_line + 1, 1, format!("found {seen} rows, expected {rows}")));
    }
    IntMatrix::new(rows, cols, data).map_err(|e| perr(hl, 1, e.to_string()))
}

pub fn format_matrix(m: &IntMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(i64::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn parse_latin(text: &str) -> Result<LatinSquare, ParseError> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| perr(1, 1, "empty input"))?;
    let (order, min) = header(hl, h)?;
    let mut cells = Vec::with_capacity(order);
    for (ln, line) in lines {
        let row: Vec<usize> = tokens(line)
            .into_iter()
            .map(|(col, s)| s.parse::<usize>().map_err(|_| perr(ln, col, format!("bad symbol {s:?}"))))
            .collect::<Result<_, _>>()?;
        if row.len() != order {
            return Err(perr(ln, 1, format!("row has {} symbols, expected {order}", row.len())));
        }
        cells.push(row);
    }
    if cells.len() != order {
        return Err(perr(hl, 1, format!("found {} rows, expected {order}", cells.len())));
    }
    LatinSquare::new(min, cells).map_err(|e| perr(hl, 1, e.to_string()))
}

pub fn format_latin(sq: &LatinSquare) -> String {
    let mut s = format!("{} {}\n", sq.order(), sq.min_symbol());
    for row in sq.rows() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<IntMatrix, IoError> {
    let path = path.as_ref();
    parse_matrix(&read(path)?).map_err(|source| IoError::Parse { path: path.to_path_buf(), source })
}

pub fn save_matrix(m: &IntMatrix, path: impl AsRef<Path>) -> Result<(), IoError> {
    write(path.as_ref(), &format_matrix(m))
}

pub fn load_latin(path: impl AsRef<Path>) -> Result<LatinSquare, IoError> {
    let path = path.as_ref();
    parse_latin(&read(path)?).map_err(|source| IoError::Parse { path: path.to_path_buf(), source })
}

pub fn save_latin(sq: &LatinSquare, path: impl AsRef<Path>) -> Result<(), IoError> {
    write(path.as_ref(), &format_latin(sq))
}
