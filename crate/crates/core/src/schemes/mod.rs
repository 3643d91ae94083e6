//! Commutative association schemes: the axiom checker, the schemes built
//! from a split and Latin squares, eigenmatrices, and the binary Hamming
//! scheme with its fusions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::latin::LatinError;
use crate::matrix::{IntMatrix, MatrixError};

pub mod auxiliary;
pub mod build;
pub mod closed;
pub mod eigen;
pub mod hamming;

pub use auxiliary::{lift_latin, AuxiliarySet};
pub use build::{build_4class, build_5class, build_6class, BuiltScheme, Symmetry};
pub use eigen::{eigenmatrices, Eigenmatrices};
pub use hamming::{hamming_scheme, muzychuk_fusion, FusionVariant};

/// Numbered axioms: 1 `A₀ = I`, 2 the classes partition `J`, 3 closure
/// under transposition, 4 products lie in the span, 5 commutativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom(pub u8);

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.0 {
            1 => "A0 = I",
            2 => "classes partition J",
            3 => "closed under transpose",
            4 => "products in the span",
            5 => "commutative",
            _ => "?",
        };
        write!(f, "({}) {}", self.0, name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("axiom {axiom} fails: {detail}; witness {witness:?}")]
    AxiomFailure { axiom: Axiom, detail: String, witness: Vec<usize> },
    #[error("ell = {0} must be odd")]
    OddityViolation(i64),
    #[error("Latin squares are not mutually UFS")]
    UfsViolation,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("eigenvalue outside the Gaussian integers: {0}")]
    IrrationalEigenvalue(String),
    #[error("eigenmatrix identity fails: {0}")]
    Eigen(String),
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn fail(axiom: u8, detail: impl Into<String>, witness: Vec<usize>) -> SchemeError {
    SchemeError::AxiomFailure { axiom: Axiom(axiom), detail: detail.into(), witness }
}

/// A verified commutative association scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    order: usize,
    matrices: Vec<IntMatrix>,
    /// `transpose[i] = j` when `A_iᵀ = A_j`.
    transpose: Vec<usize>,
    /// `p[i][j][k] = p_{ij}^k`
    p: Vec<Vec<Vec<i64>>>,
}

impl Scheme {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &IntMatrix {
        &self.matrices[i]
    }

    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose[i]
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `p_{ij}^k`
    pub fn intersection(&self, i: usize, j: usize, k: usize) -> i64 {
        self.p[i][j][k]
    }

    pub fn valencies(&self) -> Vec<i64> {
        (0..self.matrices.len()).map(|i| self.p[i][self.transpose[i]][0]).collect()
    }

    /// Coordinates of `A_i A_j` in the basis `A_0, …, A_d`.
    pub fn product(&self, i: usize, j: usize) -> &[i64] {
        &self.p[i][j]
    }
}

struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize, set: impl Fn(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if set(i, j) {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self { words, bits }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }
}

/// Checks the axioms on `A_0, …, A_d` and computes the intersection numbers
/// by reading `A_iA_j` at one entry of each class and checking that it is
/// constant over the class.
pub fn verify_scheme(matrices: Vec<IntMatrix>, exec: Exec) -> Result<Scheme, SchemeError> {
    let Some(first) = matrices.first() else {
        return Err(fail(2, "no matrices", vec![]));
    };
    let v = first.rows();
    let d1 = matrices.len();
    for (i, m) in matrices.iter().enumerate() {
        if m.rows() != v || m.cols() != v {
            return Err(fail(2, format!("A{i} is {}x{}, expected {v}x{v}", m.rows(), m.cols()), vec![i]));
        }
        if !m.is_zero_one() {
            return Err(fail(2, format!("A{i} is not a 0/1 matrix"), vec![i]));
        }
    }
    if matrices[0] != IntMatrix::identity(v) {
        return Err(fail(1, "A0 differs from the identity", vec![0]));
    }
    let mut class = vec![u8::MAX; v * v];
    for (i, m) in matrices.iter().enumerate() {
        for x in 0..v {
            for y in 0..v {
                if m.get(x, y) == 1 {
                    if class[x * v + y] != u8::MAX {
                        return Err(fail(2, format!("A{} and A{i} overlap", class[x * v + y]), vec![x, y]));
                    }
                    class[x * v + y] = i as u8;
                }
            }
        }
    }
    if let Some(pos) = class.iter().position(|&c| c == u8::MAX) {
        return Err(fail(2, "some pair lies in no class", vec![pos / v, pos % v]));
    }
    let mut transpose = Vec::with_capacity(d1);
    for (i, m) in matrices.iter().enumerate() {
        let t = m.transpose();
        match matrices.iter().position(|other| *other == t) {
            Some(j) => transpose.push(j),
            None => return Err(fail(3, format!("A{i} transposed is not a class"), vec![i])),
        }
    }
    let rows: Vec<BitRows> = matrices.iter().map(|m| BitRows::new(v, |x, y| m.get(x, y) == 1)).collect();
    let cols: Vec<BitRows> = matrices.iter().map(|m| BitRows::new(v, |x, y| m.get(y, x) == 1)).collect();
    let pairs: Vec<(usize, usize)> = (0..d1).flat_map(|i| (0..d1).map(move |j| (i, j))).collect();
    let results = exec.map(&pairs, |&(i, j)| {
        let mut coeff: Vec<Option<i64>> = vec![None; d1];
        for x in 0..v {
            let r = rows[i].row(x);
            for y in 0..v {
                let c = cols[j].row(y);
                let count = r.iter().zip(c).map(|(a, b)| (a & b).count_ones() as i64).sum::<i64>();
                let k = class[x * v + y] as usize;
                match coeff[k] {
                    None => coeff[k] = Some(count),
                    Some(p) if p != count => {
                        return Err(fail(
                            4,
                            format!("A{i}A{j} takes values {p} and {count} on class {k}"),
                            vec![i, j, k, x, y],
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(coeff.into_iter().map(|c| c.unwrap_or(0)).collect::<Vec<i64>>())
    });
    let mut p = vec![vec![Vec::new(); d1]; d1];
    for (&(i, j), r) in pairs.iter().zip(results) {
        p[i][j] = r?;
    }
    for i in 0..d1 {
        for j in 0..i {
            if let Some(k) = (0..d1).find(|&k| p[i][j][k] != p[j][i][k]) {
                return Err(fail(5, format!("A{i}A{j} differs from A{j}A{i} on class {k}"), vec![i, j, k]));
            }
        }
    }
    Ok(Scheme { order: v, matrices, transpose, p })
}

/// `{I, A, J - A - I}` for a graph adjacency matrix.
pub fn graph_classes(a: &IntMatrix) -> Vec<IntMatrix> {
    let n = a.rows();
    vec![IntMatrix::identity(n), a.clone(), crate::srg::complement_graph(a)]
}
