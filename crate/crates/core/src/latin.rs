//! Latin squares: predicates, the circle-method symmetric square, affine UFS
//! families, diagonal normalization and the composition of a UFS pair.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::gf::{FieldError, GaloisField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatinError {
    #[error("order {0} is odd")]
    OddOrder(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("squares are not UFS")]
    NotUfs,
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("symbol {symbol} outside {min}..{max}")]
    SymbolOutOfRange { symbol: usize, min: usize, max: usize },
    #[error("squares differ in order or symbol set")]
    Mismatch,
}

/// A `v × v` array over the symbols `min_symbol .. min_symbol + v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinSquare {
    min_symbol: usize,
    cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    /// Checks the shape, the symbol range and the Latin property.
    pub fn new(min_symbol: usize, cells: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        let sq = Self { min_symbol, cells };
        let v = sq.order();
        if let Some(r) = sq.cells.iter().position(|row| row.len() != v) {
            return Err(LatinError::NotLatin(format!("row {r} has length {}", sq.cells[r].len())));
        }
        for row in &sq.cells {
            if let Some(&symbol) = row.iter().find(|&&s| s < min_symbol || s >= min_symbol + v) {
                return Err(LatinError::SymbolOutOfRange { symbol, min: min_symbol, max: min_symbol + v - 1 });
            }
        }
        if !sq.is_latin() {
            return Err(LatinError::NotLatin("a row or column repeats a symbol".into()));
        }
        Ok(sq)
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn min_symbol(&self) -> usize {
        self.min_symbol
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_latin(&self) -> bool {
        is_latin(&self.cells, self.min_symbol)
    }

    pub fn is_symmetric(&self) -> bool {
        let v = self.order();
        (0..v).all(|i| (0..i).all(|j| self.cells[i][j] == self.cells[j][i]))
    }

    pub fn has_constant_diagonal(&self, symbol: usize) -> bool {
        (0..self.order()).all(|i| self.cells[i][i] == symbol)
    }

    /// Adds `delta` to every symbol.
    pub fn shift_symbols(&self, delta: usize) -> Self {
        Self {
            min_symbol: self.min_symbol + delta,
            cells: self.cells.iter().map(|r| r.iter().map(|s| s + delta).collect()).collect(),
        }
    }

    fn same_kind(&self, other: &Self) -> bool {
        self.order() == other.order() && self.min_symbol == other.min_symbol
    }
}

/// Every row and column of a square array is a permutation of
/// `min .. min + v`.
pub fn is_latin(cells: &[Vec<usize>], min: usize) -> bool {
    let v = cells.len();
    let perm = |line: Vec<usize>| {
        let mut seen = vec![false; v];
        line.into_iter().all(|s| {
            let Some(k) = s.checked_sub(min).filter(|&k| k < v) else { return false };
            !std::mem::replace(&mut seen[k], true)
        })
    };
    cells.iter().all(|r| r.len() == v)
        && cells.iter().all(|r| perm(r.clone()))
        && (0..v).all(|j| perm(cells.iter().map(|r| r[j]).collect()))
}

/// Every row of `l1` agrees with every row of `l2` in exactly one column.
pub fn is_ufs(l1: &LatinSquare, l2: &LatinSquare) -> bool {
    l1.same_kind(l2)
        && l1.cells.iter().all(|r| {
            l2.cells.iter().all(|s| r.iter().zip(s).filter(|(x, y)| x == y).count() == 1)
        })
}

/// Pairwise UFS check over a family, pairs fanned out by `exec`.
pub fn is_ufs_family(squares: &[LatinSquare], exec: Exec) -> bool {
    let pairs: Vec<(usize, usize)> =
        (0..squares.len()).flat_map(|i| (0..squares.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    exec.map(&pairs, |&(i, j)| is_ufs(&squares[i], &squares[j])).into_iter().all(|ok| ok)
}

/// Symmetric Latin square of even order `v` on `0..v` with zero diagonal,
/// from the round-robin 1-factorization of `K_v`: round `r` pairs `r` with
/// `v - 1` and `r + k` with `r - k` (mod `v - 1`), and is labeled `r + 1`.
pub fn circle_symmetric(v: usize) -> Result<LatinSquare, LatinError> {
    if v == 0 || v % 2 == 1 {
        return Err(LatinError::OddOrder(v));
    }
    let mut cells = vec![vec![0usize; v]; v];
    let m = v - 1;
    for r in 0..m {
        let mut set = |i: usize, j: usize| {
            cells[i][j] = r + 1;
            cells[j][i] = r + 1;
        };
        set(r, m);
        for k in 1..v / 2 {
            set((r + k) % m, (r + m - k) % m);
        }
    }
    LatinSquare::new(0, cells)
}

/// The `q - 1` squares `M_a(i, j) = a(i + j)` over GF(q), `a ≠ 0`, with
/// field elements as symbols `0..q`.
pub fn affine_ufs_family(q: usize) -> Result<Vec<LatinSquare>, LatinError> {
    let f = GaloisField::new(q)?;
    (1..q)
        .map(|a| {
            let cells = (0..q).map(|i| (0..q).map(|j| f.mul(a, f.add(i, j))).collect()).collect();
            LatinSquare::new(0, cells)
        })
        .collect()
}

/// Permutes the rows of each square so that `symbol` fills the diagonal:
/// the row holding `symbol` in column `c` moves to position `c`.
pub fn force_constant_diagonal(squares: &[LatinSquare], symbol: usize) -> Result<Vec<LatinSquare>, LatinError> {
    squares
        .iter()
        .map(|sq| {
            let v = sq.order();
            let mut cells = vec![Vec::new(); v];
            for row in &sq.cells {
                let c = row
                    .iter()
                    .position(|&s| s == symbol)
                    .ok_or(LatinError::SymbolOutOfRange { symbol, min: sq.min_symbol, max: sq.min_symbol + v - 1 })?;
                cells[c] = row.clone();
            }
            LatinSquare::new(sq.min_symbol, cells)
        })
        .collect()
}

/// For a UFS pair: entry `(r, s)` is the common symbol of row `r` of `l1`
/// and row `s` of `l2`.
pub fn compose_ufs(l1: &LatinSquare, l2: &LatinSquare) -> Result<LatinSquare, LatinError> {
    if !l1.same_kind(l2) {
        return Err(LatinError::Mismatch);
    }
    if !is_ufs(l1, l2) {
        return Err(LatinError::NotUfs);
    }
    let cells = l1
        .cells
        .iter()
        .map(|r| {
            l2.cells
                .iter()
                .map(|s| r.iter().zip(s).find(|(x, y)| x == y).map(|(x, _)| *x).expect("UFS rows meet"))
                .collect()
        })
        .collect();
    LatinSquare::new(l1.min_symbol, cells)
}
