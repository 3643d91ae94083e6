//! Explicit balancedly splittable Hadamard matrices.
//!
//! Every constructor returns the matrix with the split as a row-index set
//! and checks the split before handing it out.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{
    conference_from_core, normalize, sylvester, HadamardMatrix, IntMatrix, MatrixError,
    RowPlacement, SkewCore,
};
use crate::splittability::{check_split, complement_rows, delete_allones_transform, SplitError, SplitParams, SplitReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("order {0} is too small")]
    TooSmall(usize),
    #[error("constructed split has parameters {found}, expected {claimed}")]
    Mismatch { claimed: SplitParams, found: SplitParams },
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A Hadamard matrix with a designated split whose parameters have been
/// checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BshInstance {
    pub h: HadamardMatrix,
    pub split_rows: Vec<usize>,
    pub claimed: SplitParams,
    pub report: SplitReport,
}

impl BshInstance {
    pub fn new(h: HadamardMatrix, split_rows: Vec<usize>, claimed: SplitParams) -> Result<Self, ConstructionError> {
        let report = check_split(&h, &split_rows)?;
        if report.params != claimed {
            return Err(ConstructionError::Mismatch { claimed, found: report.params });
        }
        let split_rows = report.rows.clone();
        Ok(Self { h, split_rows, claimed, report })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KronVariant {
    Large,
    Small,
}

/// `H ⊗ H` for a Hadamard matrix of order `m`: the `(m-1)²` rows of
/// `H₁ ⊗ H₁` give `(m², (m-1)², 1, 1-m)`; the other `2m - 2` rows except the
/// all-ones row give `(m², 2m-2, m-2, -2)`. `H` is normalized first.
pub fn kron_square(h: &HadamardMatrix, variant: KronVariant) -> Result<BshInstance, ConstructionError> {
    let m = h.order();
    if m < 2 {
        return Err(ConstructionError::TooSmall(m));
    }
    let hn = normalize(h, RowPlacement::First);
    let big = HadamardMatrix::new(hn.matrix().kron(hn.matrix()))?;
    let m_ = m as i64;
    let (rows, claimed): (Vec<usize>, _) = match variant {
        KronVariant::Large => (
            (0..m * m).filter(|r| r / m >= 1 && r % m >= 1).collect(),
            SplitParams::new(m_ * m_, (m_ - 1).pow(2), 1, 1 - m_),
        ),
        KronVariant::Small => (
            (1..m * m).filter(|r| r / m == 0 || r % m == 0).collect(),
            SplitParams::new(m_ * m_, 2 * m_ - 2, m_ - 2, -2),
        ),
    };
    BshInstance::new(big, rows, claimed)
}

/// `M = (r_jᵀ r_i)` in `m × m` blocks, rows indexed `(i, p) ↦ im + p`; the
/// block row `i = 0` gives `(m², m, m, 0)`.
pub fn gram_construction(h: &HadamardMatrix) -> Result<BshInstance, ConstructionError> {
    let m = h.order();
    if m < 2 {
        return Err(ConstructionError::TooSmall(m));
    }
    let hn = normalize(h, RowPlacement::First);
    let r = hn.matrix();
    let big = IntMatrix::from_fn(m * m, m * m, |row, col| {
        let (i, p) = (row / m, row % m);
        let (j, q) = (col / m, col % m);
        r.get(j, p) * r.get(i, q)
    });
    let m_ = m as i64;
    BshInstance::new(HadamardMatrix::new(big)?, (0..m).collect(), SplitParams::new(m_ * m_, m_, m_, 0))
}

/// `H ⊗ K` with `K` normalized; the rows of `H ⊗ K₁` (`K₁` = `K` without its
/// all-ones row) give `(km, k(m-1), 0, -k)`.
pub fn core_tensor(h: &HadamardMatrix, k2: &HadamardMatrix) -> Result<BshInstance, ConstructionError> {
    let (k, m) = (h.order(), k2.order());
    if m < 2 {
        return Err(ConstructionError::TooSmall(m));
    }
    let kn = normalize(k2, RowPlacement::First);
    let big = HadamardMatrix::new(h.matrix().kron(kn.matrix()))?;
    let rows = (0..k * m).filter(|r| r % m != 0).collect();
    let (k_, m_) = (k as i64, m as i64);
    BshInstance::new(big, rows, SplitParams::new(k_ * m_, k_ * (m_ - 1), 0, -k_))
}

/// Normalizes so that row 0 is all-ones and row 1 reads `(+…+, −…−)`; the
/// remaining `n - 2` rows give `(n, n-2, 0, -2)`.
pub fn two_row_split(h: &HadamardMatrix) -> Result<BshInstance, ConstructionError> {
    let n = h.order();
    if n < 4 {
        return Err(ConstructionError::TooSmall(n));
    }
    let hn = normalize(h, RowPlacement::First);
    let mut cols: Vec<usize> = (0..n).collect();
    cols.sort_by_key(|&c| -hn.matrix().get(1, c));
    let permuted = IntMatrix::from_fn(n, n, |i, j| hn.matrix().get(i, cols[j]));
    let n_ = n as i64;
    BshInstance::new(HadamardMatrix::new(permuted)?, (2..n).collect(), SplitParams::new(n_, n_ - 2, 0, -2))
}

/// Sylvester matrix of order `4^m` with rows split three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinSylvester {
    pub h: HadamardMatrix,
    /// `(4^m, 2^m, 2^m, 0)`
    pub h1_rows: Vec<usize>,
    /// `(4^m, 2^{m-1}(2^m - 1), 2^{m-1}, -2^{m-1})`
    pub h2_rows: Vec<usize>,
    pub h3_rows: Vec<usize>,
}

impl TwinSylvester {
    pub fn instances(&self) -> Result<[BshInstance; 3], ConstructionError> {
        let n = self.h.order() as i64;
        let s = (n as f64).sqrt().round() as i64;
        let half = SplitParams::new(n, s * (s - 1) / 2, s / 2, -s / 2);
        Ok([
            BshInstance::new(self.h.clone(), self.h1_rows.clone(), SplitParams::new(n, s, s, 0))?,
            BshInstance::new(self.h.clone(), self.h2_rows.clone(), half)?,
            BshInstance::new(self.h.clone(), self.h3_rows.clone(), half)?,
        ])
    }
}

/// Grows the order-4 partition `{0,1} | {2} | {3}` by `H ↦ H ⊗ H₄`, a row
/// `(x, y)` becoming `4x + y`:
/// `W' = W × W₁`, `P' = (W ∪ Q) × P₁ ∪ P × (W₁ ∪ Q₁)`, and `Q'` the rest.
pub fn twin_sylvester(m_exponent: u32) -> Result<TwinSylvester, ConstructionError> {
    if m_exponent == 0 {
        return Err(ConstructionError::TooSmall(1));
    }
    let (w1, p1, q1) = (vec![0usize, 1], vec![2usize], vec![3usize]);
    let (mut w, mut p, mut q) = (w1.clone(), p1.clone(), q1.clone());
    let mut order = 4;
    for _ in 1..m_exponent {
        let pair = |xs: &[usize], ys: &[usize]| -> Vec<usize> {
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| 4 * x + y)).collect()
        };
        let wq: Vec<usize> = w.iter().chain(&q).copied().collect();
        let w1q1: Vec<usize> = w1.iter().chain(&q1).copied().collect();
        let nw = pair(&w, &w1);
        let mut np = pair(&wq, &p1);
        np.extend(pair(&p, &w1q1));
        order *= 4;
        let mut taken = vec![false; order];
        for &r in nw.iter().chain(&np) {
            taken[r] = true;
        }
        q = (0..order).filter(|&r| !taken[r]).collect();
        w = nw;
        p = np;
        w.sort_unstable();
        p.sort_unstable();
    }
    let twin = TwinSylvester { h: sylvester(2 * m_exponent), h1_rows: w, h2_rows: p, h3_rows: q };
    twin.instances()?;
    Ok(twin)
}

/// `(𝒥_m, 𝒜_m)` from `𝒥_0 = 𝒜_0 = J₁`, `𝒥_m = J_q ⊗ 𝒜_{m-1}`,
/// `𝒜_m = I_q ⊗ 𝒥_{m-1} + Q ⊗ 𝒜_{m-1}`.
pub fn ja_recursion(core: &SkewCore, m: u32) -> (IntMatrix, IntMatrix) {
    let q = core.order();
    let (mut j, mut a) = (IntMatrix::ones(1, 1), IntMatrix::ones(1, 1));
    for _ in 0..m {
        let nj = IntMatrix::ones(q, q).kron(&a);
        let na = &IntMatrix::identity(q).kron(&j) + &core.matrix().kron(&a);
        j = nj;
        a = na;
    }
    (j, a)
}

/// `M = -I_{q+1} ⊗ 𝒥₁ + C ⊗ 𝒜₁` with `C` the conference matrix of the
/// core; the first `q` rows give `(q(q+1), q, q, -1)`.
pub fn skew_core_bsh(core: &SkewCore) -> Result<BshInstance, ConstructionError> {
    let q = core.order();
    let (j1, a1) = ja_recursion(core, 1);
    let c = conference_from_core(core);
    let m = &(-&IntMatrix::identity(q + 1).kron(&j1)) + &c.kron(&a1);
    let q_ = q as i64;
    BshInstance::new(HadamardMatrix::new(m)?, (0..q).collect(), SplitParams::new(q_ * (q_ + 1), q_, q_, -1))
}

/// Instance of the `b = -a` twin split after deleting the all-ones row:
/// `Complement` deletes it from the complement of the split, `Translated`
/// first shifts the split by one of its rows so that it contains the
/// all-ones row and deletes it from the split itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeletionSide {
    Complement,
    Translated,
}

pub fn twin_deletion(m_exponent: u32, side: DeletionSide) -> Result<BshInstance, ConstructionError> {
    let twin = twin_sylvester(m_exponent)?;
    let n = twin.h.order();
    let split = match side {
        DeletionSide::Complement => check_split(&twin.h, &twin.h2_rows)?,
        DeletionSide::Translated => {
            // Sylvester rows satisfy r_x ∘ r_t = r_{x⊕t}.
            let t = twin.h2_rows[0];
            let shifted: Vec<usize> = twin.h2_rows.iter().map(|&x| x ^ t).collect();
            check_split(&twin.h, &complement_rows(n, &shifted))?
        }
    };
    let derived = delete_allones_transform(&twin.h, &split)?;
    let claimed = derived.params;
    BshInstance::new(twin.h, derived.rows, claimed)
}

/// Named constructions, used as existence witnesses for parameter sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `b = -a` block of the twin Sylvester matrix of order `4^m`.
    Twin { m: u32 },
    /// Twin split with the all-ones row deleted.
    TwinDeletion { m: u32, side: DeletionSide },
    /// Kronecker square of the Sylvester matrix of order `2^k`.
    KronSquare { k: u32, variant: KronVariant },
    /// Skew-core construction over the Paley core of order `q`.
    SkewCore { q: usize },
}

impl Witness {
    pub fn build(self) -> Result<BshInstance, ConstructionError> {
        match self {
            Witness::Twin { m } => {
                let twin = twin_sylvester(m)?;
                let [_, p, _] = twin.instances()?;
                Ok(p)
            }
            Witness::TwinDeletion { m, side } => twin_deletion(m, side),
            Witness::KronSquare { k, variant } => kron_square(&sylvester(k), variant),
            Witness::SkewCore { q } => skew_core_bsh(&crate::matrix::paley_skew_core(q)?),
        }
    }

    /// Parameters realized, computed without building the matrix.
    pub fn params(self) -> SplitParams {
        match self {
            Witness::Twin { m } => {
                let s = 1i64 << m;
                SplitParams::new(s * s, s * (s - 1) / 2, s / 2, -s / 2)
            }
            Witness::TwinDeletion { m, side } => {
                let s = 1i64 << m;
                let ell = match side {
                    DeletionSide::Complement => s * (s + 1) / 2 - 1,
                    DeletionSide::Translated => s * (s - 1) / 2 - 1,
                };
                SplitParams::new(s * s, ell, s / 2 - 1, -s / 2 - 1)
            }
            Witness::KronSquare { k, variant } => {
                let m = 1i64 << k;
                match variant {
                    KronVariant::Large => SplitParams::new(m * m, (m - 1).pow(2), 1, 1 - m),
                    KronVariant::Small => SplitParams::new(m * m, 2 * m - 2, m - 2, -2),
                }
            }
            Witness::SkewCore { q } => {
                let q = q as i64;
                SplitParams::new(q * (q + 1), q, q, -1)
            }
        }
    }
}

/// Witnesses for power-of-two orders up to `max_n`, in increasing order.
pub fn witness_registry(max_n: i64) -> Vec<Witness> {
    let mut out = Vec::new();
    let mut m = 1u32;
    while (1i64 << (2 * m)) <= max_n {
        out.push(Witness::Twin { m });
        if m >= 2 {
            out.push(Witness::TwinDeletion { m, side: DeletionSide::Complement });
            out.push(Witness::TwinDeletion { m, side: DeletionSide::Translated });
        }
        out.push(Witness::KronSquare { k: m, variant: KronVariant::Large });
        out.push(Witness::KronSquare { k: m, variant: KronVariant::Small });
        m += 1;
    }
    out
}

/// First registered witness with exactly these parameters.
pub fn find_witness(p: &SplitParams) -> Option<Witness> {
    witness_registry(p.n).into_iter().find(|w| w.params() == *p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::paley_skew_core;

    #[test]
    fn kron_examples() {
        let i = kron_square(&sylvester(2), KronVariant::Large).unwrap();
        assert_eq!(i.claimed, SplitParams::new(16, 9, 1, -3));
        let i = kron_square(&sylvester(2), KronVariant::Small).unwrap();
        assert_eq!(i.claimed, SplitParams::new(16, 6, 2, -2));
        let i = kron_square(&sylvester(1), KronVariant::Large).unwrap();
        assert_eq!(i.claimed, SplitParams::new(4, 1, 1, -1));
    }

    #[test]
    fn gram_and_tensor_examples() {
        assert_eq!(gram_construction(&sylvester(1)).unwrap().claimed, SplitParams::new(4, 2, 2, 0));
        assert_eq!(gram_construction(&sylvester(2)).unwrap().claimed, SplitParams::new(16, 4, 4, 0));
        let t = core_tensor(&sylvester(1), &sylvester(1)).unwrap();
        assert_eq!(t.claimed, SplitParams::new(4, 2, 0, -2));
        let t = core_tensor(&sylvester(1), &sylvester(2)).unwrap();
        assert_eq!(t.claimed, SplitParams::new(8, 6, 0, -2));
    }

    #[test]
    fn two_row_examples() {
        for m in 2..=4 {
            let i = two_row_split(&sylvester(m)).unwrap();
            let n = 1i64 << m;
            assert_eq!(i.claimed, SplitParams::new(n, n - 2, 0, -2));
        }
        assert!(two_row_split(&sylvester(1)).is_err());
    }

    #[test]
    fn twin_orders() {
        let t = twin_sylvester(1).unwrap();
        assert_eq!((t.h1_rows.clone(), t.h2_rows.clone(), t.h3_rows.clone()), (vec![0, 1], vec![2], vec![3]));
        for m in 2..=3 {
            let t = twin_sylvester(m).unwrap();
            let [a, b, c] = t.instances().unwrap();
            let n = 1i64 << (2 * m);
            let s = 1i64 << m;
            assert_eq!(a.claimed, SplitParams::new(n, s, s, 0));
            assert_eq!(b.claimed, SplitParams::new(n, s * (s - 1) / 2, s / 2, -s / 2));
            assert_eq!(c.claimed, b.claimed);
        }
    }

    #[test]
    fn skew_core_examples() {
        for q in [3, 7, 11] {
            let i = skew_core_bsh(&paley_skew_core(q).unwrap()).unwrap();
            let q = q as i64;
            assert_eq!(i.claimed, SplitParams::new(q * (q + 1), q, q, -1));
        }
    }

    #[test]
    fn deletions() {
        let c = twin_deletion(2, DeletionSide::Complement).unwrap();
        assert_eq!(c.claimed, SplitParams::new(16, 9, 1, -3));
        let t = twin_deletion(2, DeletionSide::Translated).unwrap();
        assert_eq!(t.claimed, SplitParams::new(16, 5, 1, -3));
        for w in witness_registry(64) {
            assert_eq!(w.build().unwrap().claimed, w.params(), "{w:?}");
        }
    }
}
