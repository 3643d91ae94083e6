//! Dense exact integer matrices and the elementary Hadamard toolkit.
//!
//! Entries are `i64`. Every product accumulates in `i128` and is narrowed
//! with a range check, so an overflow surfaces as [`MatrixError::Overflow`]
//! (or a panic through the operator impls) instead of wrapping silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::gf::{FieldError, GaloisField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ragged input: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("not a skew-symmetric core: {0}")]
    NotSkewCore(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("q = {0} is not congruent to 3 mod 4; the Paley core is not skew")]
    NotThreeModFour(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged { row: i, found: r.len(), expected: cols });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    /// `I_n`
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i64::from(i == j))
    }

    /// `J_{rows,cols}`
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![1; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: i64) -> Self {
        let mut out = self.clone();
        out.data[i * self.cols + j] = value;
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        self.try_scale(k).expect("matrix scale overflow")
    }

    pub fn try_scale(&self, k: i64) -> Result<Self, MatrixError> {
        let data = self
            .data
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip_with(rhs, "add", |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip_with(rhs, "sub", |a, b| a.checked_sub(b))
    }

    fn zip_with(
        &self,
        rhs: &Self,
        what: &str,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::Shape(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut acc = vec![0i128; p];
        let mut data = Vec::with_capacity(n * p);
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == 0 {
                    continue;
                }
                let a = i128::from(a);
                for (slot, &b) in acc.iter_mut().zip(&rhs.data[k * p..(k + 1) * p]) {
                    *slot += a * i128::from(b);
                }
            }
            for &x in &acc {
                data.push(i64::try_from(x).map_err(|_| MatrixError::Overflow)?);
            }
        }
        Ok(Self { rows: n, cols: p, data })
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        Self::from_fn(rows, cols, |i, j| {
            let (i1, i2) = (i / rhs.rows, i % rhs.rows);
            let (j1, j2) = (j / rhs.cols, j % rhs.cols);
            self.get(i1, j1)
                .checked_mul(rhs.get(i2, j2))
                .expect("kronecker product overflow")
        })
    }

    /// The submatrix made of the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self { rows: rows.len(), cols: self.cols, data }
    }

    /// Column Gram matrix `selfᵀ · self`.
    pub fn gram(&self) -> Self {
        self.transpose().checked_mul(self).expect("gram overflow")
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn is_sign_matrix(&self) -> bool {
        self.data.iter().all(|&x| x == 1 || x == -1)
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for (s, &x) in sums.iter_mut().zip(self.row(i)) {
                *s += x;
            }
        }
        sums
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("matrix product: {e}"))
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("matrix sum: {e}"))
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("matrix difference: {e}"))
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(-1)
    }
}

/// Kronecker product of two matrices.
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.kron(b)
}

/// True iff `m` is square with ±1 entries and `m·mᵀ = n·I`.
pub fn is_hadamard(m: &IntMatrix) -> bool {
    if !m.is_square() || !m.is_sign_matrix() {
        return false;
    }
    let n = m.rows();
    (0..n).all(|i| {
        (i + 1..n).all(|j| m.row(i).iter().zip(m.row(j)).map(|(a, b)| a * b).sum::<i64>() == 0)
    })
}

/// A ±1 matrix with `H·Hᵀ = n·I`, checked at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HadamardMatrix(IntMatrix);

impl HadamardMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotHadamard("not square".into()));
        }
        if !m.is_sign_matrix() {
            return Err(MatrixError::NotHadamard("entries outside {1,-1}".into()));
        }
        if !is_hadamard(&m) {
            return Err(MatrixError::NotHadamard("rows are not orthogonal".into()));
        }
        Ok(Self(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn row(&self, i: usize) -> &[i64] {
        self.0.row(i)
    }

    /// Index of an all-ones row, if any.
    pub fn all_ones_row(&self) -> Option<usize> {
        (0..self.order()).find(|&i| self.row(i).iter().all(|&x| x == 1))
    }

    /// Rows permuted into the given order (a Hadamard-equivalent matrix).
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        Self(self.0.select_rows(order))
    }
}

/// Sylvester-type Hadamard matrix of order `2^m`, `H_1^{⊗m}`.
pub fn sylvester(m: u32) -> HadamardMatrix {
    let n = 1usize << m;
    let m = IntMatrix::from_fn(n, n, |i, j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 });
    HadamardMatrix(m)
}

/// Which row the normalization turns into the all-ones vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowPlacement {
    First,
    Last,
}

/// Flip column signs so the designated row is all-ones, then row signs so
/// the first column is all-ones.
pub fn normalize(h: &HadamardMatrix, placement: RowPlacement) -> HadamardMatrix {
    let n = h.order();
    let target = match placement {
        RowPlacement::First => 0,
        RowPlacement::Last => n - 1,
    };
    let col_sign: Vec<i64> = h.row(target).to_vec();
    let row_sign: Vec<i64> = (0..n).map(|i| h.matrix().get(i, 0) * col_sign[0]).collect();
    HadamardMatrix(IntMatrix::from_fn(n, n, |i, j| h.matrix().get(i, j) * col_sign[j] * row_sign[i]))
}

/// A `(0,±1)` matrix `Q` with `Qᵀ = -Q`, `JQ = QJ = O`, `QQᵀ = qI - J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewCore(IntMatrix);

impl SkewCore {
    pub fn new(m: IntMatrix) -> Result<Self, MatrixError> {
        let err = |s: &str| Err(MatrixError::NotSkewCore(s.into()));
        if !m.is_square() {
            return err("not square");
        }
        let q = m.rows();
        if m.as_slice().iter().any(|x| !(-1..=1).contains(x)) {
            return err("entries outside {0,1,-1}");
        }
        if m.transpose() != -&m {
            return err("not skew-symmetric");
        }
        if m.row_sums().iter().any(|&s| s != 0) || m.col_sums().iter().any(|&s| s != 0) {
            return err("JQ or QJ is nonzero");
        }
        let expected = &IntMatrix::identity(q).scale(q as i64) - &IntMatrix::ones(q, q);
        if &m * &m.transpose() != expected {
            return err("QQᵀ differs from qI - J");
        }
        Ok(Self(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }
}

/// Paley core over GF(q): `Q[x][y] = χ(y - x)`, for prime powers `q ≡ 3 (mod 4)`.
pub fn paley_skew_core(q: usize) -> Result<SkewCore, MatrixError> {
    let field = GaloisField::new(q)?;
    if q % 4 != 3 {
        return Err(MatrixError::NotThreeModFour(q));
    }
    let m = IntMatrix::from_fn(q, q, |x, y| field.chi(field.sub(y, x)));
    SkewCore::new(m)
}

/// The bordered skew Hadamard matrix `[[1, 1ᵀ], [-1, I + Q]]` of order `q + 1`.
pub fn skew_hadamard_from_core(core: &SkewCore) -> HadamardMatrix {
    let q = core.order();
    let m = IntMatrix::from_fn(q + 1, q + 1, |i, j| match (i, j) {
        (0, _) => 1,
        (_, 0) => -1,
        _ => core.matrix().get(i - 1, j - 1) + i64::from(i == j),
    });
    HadamardMatrix::new(m).expect("a skew core always borders to a Hadamard matrix")
}

/// Conference matrix `C = H - I` with `CCᵀ = qI`.
pub fn conference_from_core(core: &SkewCore) -> IntMatrix {
    let h = skew_hadamard_from_core(core);
    h.matrix() - &IntMatrix::identity(core.order() + 1)
}
