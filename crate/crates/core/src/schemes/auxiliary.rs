//! Auxiliary matrices `C_i = r_iᵀ r_i` and block matrices indexed by Latin
//! squares.

use crate::latin::LatinSquare;
use crate::matrix::{HadamardMatrix, IntMatrix};
use crate::splittability::SplitParams;

use super::SchemeError;

/// The `C_i` of a Hadamard matrix, checked on construction:
/// `Σ C_i = nI`, `C_i² = nC_i`, `C_iC_j = O` for `i ≠ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliarySet {
    source: HadamardMatrix,
    matrices: Vec<IntMatrix>,
}

fn outer(x: &[i64], y: &[i64]) -> IntMatrix {
    IntMatrix::from_fn(x.len(), y.len(), |p, q| x[p] * y[q])
}

impl AuxiliarySet {
    pub fn new(h: &HadamardMatrix) -> Result<Self, SchemeError> {
        let n = h.order();
        let matrices: Vec<IntMatrix> = (0..n).map(|i| outer(h.row(i), h.row(i))).collect();
        let mut sum = IntMatrix::zeros(n, n);
        for c in &matrices {
            sum = &sum + c;
        }
        if sum != IntMatrix::identity(n).scale(n as i64) {
            return Err(SchemeError::Precondition("sum of the C_i is not nI".into()));
        }
        for (i, c) in matrices.iter().enumerate() {
            if (c * c) != c.scale(n as i64) {
                return Err(SchemeError::Precondition(format!("C_{i}^2 != n C_{i}")));
            }
        }
        // C_iC_j = r_iᵀ (r_i r_jᵀ) r_j, so it vanishes exactly when the rows are
        // orthogonal; the scalar is computed, not assumed.
        for i in 0..n {
            for j in i + 1..n {
                let s: i64 = h.row(i).iter().zip(h.row(j)).map(|(x, y)| x * y).sum();
                if s != 0 {
                    return Err(SchemeError::Precondition(format!("C_{i} C_{j} != O")));
                }
            }
        }
        Ok(Self { source: h.clone(), matrices })
    }

    pub fn order(&self) -> usize {
        self.source.order()
    }

    pub fn source(&self) -> &HadamardMatrix {
        &self.source
    }

    /// `C_i` for a row index of the source matrix.
    pub fn c(&self, i: usize) -> &IntMatrix {
        &self.matrices[i]
    }

    /// `Σ_{i ∈ rows} C_i`, the Gram matrix of those rows.
    pub fn sum_over(&self, rows: &[usize]) -> IntMatrix {
        let n = self.order();
        rows.iter().fold(IntMatrix::zeros(n, n), |acc, &r| &acc + &self.matrices[r])
    }

    /// `C_i J = O` for every listed row (zero row sums).
    pub fn annihilates_ones(&self, rows: &[usize]) -> bool {
        rows.iter().all(|&r| self.matrices[r].row_sums().iter().all(|&s| s == 0))
    }

    /// `(a - b) A C_i = (a - b) C_i A = (n - ℓ + b) C_i` for every listed row.
    pub fn eigen_relation_holds(&self, adjacency: &IntMatrix, rows: &[usize], p: &SplitParams) -> bool {
        let factor = p.n - p.ell + p.b;
        rows.iter().all(|&r| {
            let c = &self.matrices[r];
            let target = c.scale(factor);
            (adjacency * c).scale(p.a - p.b) == target && (c * adjacency).scale(p.a - p.b) == target
        })
    }
}

/// The block matrix `(C_{L(i,j)})`, symbol `s ≥ 1` standing for the `s`-th
/// split row (in increasing order) and `0` for the zero matrix.
pub fn lift_latin(aux: &AuxiliarySet, square: &LatinSquare, split: &[usize]) -> Result<IntMatrix, SchemeError> {
    let n = aux.order();
    let v = square.order();
    let max_symbol = square.min_symbol() + v - 1;
    if max_symbol > split.len() {
        return Err(SchemeError::Precondition(format!(
            "symbol {max_symbol} exceeds the {} split rows",
            split.len()
        )));
    }
    let mut sorted = split.to_vec();
    sorted.sort_unstable();
    Ok(IntMatrix::from_fn(v * n, v * n, |x, y| {
        let s = square.get(x / n, y / n);
        if s == 0 {
            0
        } else {
            aux.c(sorted[s - 1]).get(x % n, y % n)
        }
    }))
}

/// `L̃ L̃ᵀ = n I ⊗ (ℓI + aA + b(J - A - I))`
pub fn lift_gram_holds(lift: &IntMatrix, gram: &IntMatrix) -> bool {
    let n = gram.rows();
    let v = lift.rows() / n.max(1);
    let expected = IntMatrix::identity(v).kron(gram).scale(n as i64);
    (lift * &lift.transpose()) == expected
}

/// `L̃_1 L̃_2ᵀ = n L̃_{1,2}`
pub fn lift_product_holds(l1: &IntMatrix, l2: &IntMatrix, l12: &IntMatrix, n: usize) -> bool {
    (l1 * &l2.transpose()) == l12.scale(n as i64)
}
