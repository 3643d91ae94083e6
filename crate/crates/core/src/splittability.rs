//! Balanced splittability of a Hadamard matrix with respect to a row block,
//! the strongly regular graph it induces, and the derived checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clique::{max_clique_size, BitGraph};
use crate::exec::Exec;
use crate::field::{rat, ExactNumber, Gauss, Rational};
use crate::matrix::{HadamardMatrix, IntMatrix, MatrixError};
pub use crate::srg::SrgParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("row subset is empty")]
    EmptySubset,
    #[error("row index {index} out of range for order {order}")]
    RowOutOfRange { index: usize, order: usize },
    #[error("not balancedly splittable: off-diagonal values include {values:?}")]
    NotSplittable { values: Vec<i64> },
    #[error("single off-diagonal value with (ell, a) = ({ell}, {a}) is impossible")]
    InvalidSingleValue { ell: i64, a: i64 },
    #[error("two off-diagonal values fit neither strongly regular branch: {0:?}")]
    Unclassified(SplitParams),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("infeasible Seidel parameters: {0}")]
    InfeasibleSeidel(String),
    #[error("no all-ones row outside the split")]
    MissingAllOnesRow,
    #[error("equiangular bound inapplicable: ell * alpha^2 = {0} >= 1")]
    BoundInapplicable(String),
    #[error("parameters {0:?} are not of the unbiased form ((n±√n)/2, √n/2, -√n/2)")]
    NotUnbiasedCase(SplitParams),
    #[error("wrong parameters: {0}")]
    WrongParameters(String),
    #[error("not diagonalized: entry ({row}, {col}) of H A Hᵀ is {value}")]
    NotDiagonalized { row: usize, col: usize, value: i64 },
    #[error("Hadamard matrix has no all-ones row")]
    NotNormalized,
    #[error("search needs {subsets} subsets, budget is {budget}")]
    BudgetExceeded { subsets: u128, budget: u128 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `(n, ℓ, a, b)` with `a ≥ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitParams {
    pub n: i64,
    pub ell: i64,
    pub a: i64,
    pub b: i64,
}

impl SplitParams {
    pub fn new(n: i64, ell: i64, a: i64, b: i64) -> Self {
        Self { n, ell, a, b }
    }

    pub fn is_consistent(&self) -> bool {
        let Self { n, ell, a, b } = *self;
        (1..=n).contains(&ell)
            && a >= b
            && a.abs() <= ell
            && b.abs() <= ell
            && (a - ell).rem_euclid(2) == 0
            && (b - ell).rem_euclid(2) == 0
    }

    pub fn is_seidel(&self) -> bool {
        self.b == -self.a && self.a != 0
    }
}

impl std::fmt::Display for SplitParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.ell, self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    SingleValue,
    Seidel,
    CaseA,
    CaseB,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitChecks {
    pub gram_ok: bool,
    pub rowsum_zero: bool,
    /// Seidel quadratic identity; absent outside the Seidel branch.
    pub seidel_ok: Option<bool>,
    /// The adjacency matrix is strongly regular with the derived parameters
    /// (case (a)/(b) only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub srg_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub params: SplitParams,
    /// Sorted row indices of the block `H₁`.
    pub rows: Vec<usize>,
    /// 0/1, zero diagonal, 1 where the Gram equals `a`.
    pub adjacency: IntMatrix,
    pub branch: Branch,
    /// The complementary (a)/(b) formula also matched.
    pub other_branch: bool,
    pub srg: Option<SrgParams>,
    pub checks: SplitChecks,
}

/// The JSON shape of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSummary {
    pub n: i64,
    pub ell: i64,
    pub a: i64,
    pub b: i64,
    pub branch: Branch,
    pub srg: Option<SrgParams>,
    pub checks: SplitChecks,
}

impl SplitReport {
    pub fn summary(&self) -> SplitSummary {
        let SplitParams { n, ell, a, b } = self.params;
        SplitSummary { n, ell, a, b, branch: self.branch, srg: self.srg, checks: self.checks.clone() }
    }
}

fn gram_of_rows(h: &IntMatrix, rows: &[usize]) -> IntMatrix {
    h.select_rows(rows).gram()
}

fn exact_div(num: i128, den: i128) -> Option<i64> {
    (den != 0 && num % den == 0).then(|| i64::try_from(num / den).ok()).flatten()
}

/// Verifies that the Gram of the chosen rows has at most two distinct
/// off-diagonal values and classifies the split.
pub fn check_split(h: &HadamardMatrix, row_subset: &[usize]) -> Result<SplitReport, SplitError> {
    let order = h.order();
    let rows: Vec<usize> = row_subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if rows.is_empty() {
        return Err(SplitError::EmptySubset);
    }
    if let Some(&index) = rows.iter().find(|&&r| r >= order) {
        return Err(SplitError::RowOutOfRange { index, order });
    }
    let g = gram_of_rows(h.matrix(), &rows);
    let mut values = BTreeSet::new();
    for i in 0..order {
        for j in i + 1..order {
            values.insert(g.get(i, j));
            if values.len() > 2 {
                return Err(SplitError::NotSplittable { values: values.into_iter().collect() });
            }
        }
    }
    let n = order as i64;
    let ell = rows.len() as i64;
    let rowsum_zero = rows.iter().all(|&r| h.row(r).iter().sum::<i64>() == 0);
    let values: Vec<i64> = values.into_iter().collect();

    if values.len() <= 1 {
        let a = values.first().copied().unwrap_or(0);
        if order > 1 && ![(1, 1), (n - 1, -1), (n, 0)].contains(&(ell, a)) {
            return Err(SplitError::InvalidSingleValue { ell, a });
        }
        let params = SplitParams::new(n, ell, a, a);
        let adjacency = IntMatrix::from_fn(order, order, |i, j| i64::from(i != j));
        let gram_ok = gram_from_params(&params, &adjacency) == g;
        return Ok(SplitReport {
            params,
            rows,
            adjacency,
            branch: Branch::SingleValue,
            other_branch: false,
            srg: None,
            checks: SplitChecks { gram_ok, rowsum_zero, seidel_ok: None, srg_ok: None },
        });
    }

    let (b, a) = (values[0], values[1]);
    let params = SplitParams::new(n, ell, a, b);
    let adjacency = IntMatrix::from_fn(order, order, |i, j| i64::from(i != j && g.get(i, j) == a));
    let gram_ok = gram_from_params(&params, &adjacency) == g;

    if b == -a {
        let srg = derive_seidel(n, ell, a).ok().map(|(p, _)| p);
        let seidel_ok = seidel_identity_holds(&params, &adjacency);
        return Ok(SplitReport {
            params,
            rows,
            adjacency,
            branch: Branch::Seidel,
            other_branch: false,
            srg,
            checks: SplitChecks { gram_ok, rowsum_zero, seidel_ok: Some(seidel_ok), srg_ok: None },
        });
    }

    let fits_a = case_a_b(n, ell, a) == Some(b);
    let fits_b = case_b_b(n, ell, a) == Some(b);
    let (branch, derived) = match (fits_a, fits_b) {
        (true, _) => (Branch::CaseA, derive_srg_case_a(n, ell, a)),
        (false, true) => (Branch::CaseB, derive_srg_case_b(n, ell, a)),
        _ => return Err(SplitError::Unclassified(params)),
    };
    let srg = derived.ok().map(|(_, p)| p);
    let srg_ok = srg.map(|p| SrgParams::of_adjacency(&adjacency) == Some(p));
    Ok(SplitReport {
        params,
        rows,
        adjacency,
        branch,
        other_branch: fits_a && fits_b,
        srg,
        checks: SplitChecks { gram_ok, rowsum_zero, seidel_ok: None, srg_ok },
    })
}

/// `ℓI + aA + b(J - A - I)`
pub fn gram_from_params(p: &SplitParams, adjacency: &IntMatrix) -> IntMatrix {
    let n = adjacency.rows();
    IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            p.ell
        } else if adjacency.get(i, j) == 1 {
            p.a
        } else {
            p.b
        }
    })
}

/// Case (a) value of `b`: `ℓ(ℓ - a - n) / (a(n-1) + ℓ)`.
pub fn case_a_b(n: i64, ell: i64, a: i64) -> Option<i64> {
    let (n, l, a) = (n as i128, ell as i128, a as i128);
    exact_div(l * (l - a - n), a * (n - 1) + l)
}

/// Case (b) value of `b`: `(a - ℓ)(n - ℓ) / (a(n-1) + ℓ - n)`.
pub fn case_b_b(n: i64, ell: i64, a: i64) -> Option<i64> {
    let (n, l, a) = (n as i128, ell as i128, a as i128);
    exact_div((a - l) * (n - l), a * (n - 1) + l - n)
}

fn rational_value(name: &str, num: i128, den: i128) -> Result<i64, SplitError> {
    if den == 0 {
        return Err(SplitError::NonIntegral(format!("{name}: zero denominator")));
    }
    exact_div(num, den).ok_or_else(|| SplitError::NonIntegral(format!("{name} = {num}/{den}")))
}

fn checked_srg(p: SrgParams) -> Result<SrgParams, SplitError> {
    if p.satisfies_identity() {
        Ok(p)
    } else {
        Err(SplitError::NonIntegral(format!("{p} violates k(k-λ-1) = (v-k-1)μ")))
    }
}

/// Case (a) closed forms: `b` and the graph parameters.
pub fn derive_srg_case_a(n: i64, ell: i64, a: i64) -> Result<(i64, SrgParams), SplitError> {
    let (n_, l, a_) = (n as i128, ell as i128, a as i128);
    let b = rational_value("b", l * (l - a_ - n_), a_ * (n_ - 1) + l)?;
    let d = n_ * (a_ * a_ + l) - (a_ - l).pow(2);
    let k = rational_value("k", l * n_ * (n_ - l - 1), d)?;
    let d2 = d * d;
    let a3 = a_.pow(3) + l * l;
    let lambda = rational_value(
        "lambda",
        n_ * (n_ * n_ * a3 - 2 * (l + 1) * n_ * a3 + (2 * a_ * l + a_ + l * (l + 2)) * (a_ - l).pow(2)),
        d2,
    )?;
    let mu = rational_value("mu", l * n_ * (a_ - l) * (l - n_ + 1) * (a_ - l + n_), d2)?;
    Ok((b, checked_srg(SrgParams::new(n, k, lambda, mu))?))
}

/// Case (b) closed forms: `b` and the graph parameters.
pub fn derive_srg_case_b(n: i64, ell: i64, a: i64) -> Result<(i64, SrgParams), SplitError> {
    let (n_, l, a_) = (n as i128, ell as i128, a as i128);
    let b = rational_value("b", (a_ - l) * (n_ - l), a_ * (n_ - 1) + l - n_)?;
    let d = (a_ - l).pow(2) - n_ * ((a_ - 2) * a_ + l);
    let k = rational_value("k", (l - 1) * n_ * (l - n_), d)?;
    let d2 = d * d;
    let lambda = rational_value(
        "lambda",
        n_ * (a_.pow(3) * (-2 * l * (n_ - 1) + n_ * n_ - 1) - 3 * a_ * a_ * (l - n_).pow(2)
            + 3 * a_ * (l - n_).pow(2)
            + (l - 2) * l * (l - n_).pow(2)),
        d2,
    )?;
    let mu = rational_value("mu", (l - 1) * n_ * (a_ - l) * (l - n_) * (a_ - l + n_), d2)?;
    Ok((b, checked_srg(SrgParams::new(n, k, lambda, mu))?))
}

/// Graph parameters from the general `(n, ℓ, a, b)` expressions (valid for
/// any `b ≠ ±a`); an independent route to the same numbers.
pub fn srg_from_general(p: &SplitParams) -> Result<SrgParams, SplitError> {
    let (n, l, a, b) = (p.n as i128, p.ell as i128, p.a as i128, p.b as i128);
    let k = rational_value("k", n * l - l * l - b * b * (n - 1), a * a - b * b)?;
    let den = (a - b).pow(2) * (a + b);
    let lambda = rational_value(
        "lambda",
        n * (a * a - a * (b - 1) * b + b.pow(3) - 2 * b * l)
            + 2 * (b - l) * (a * a + a * b - b * (b + l)),
        den,
    )?;
    let mu = rational_value(
        "mu",
        b * n * (-a * b + a + b * b + b - 2 * l) + 2 * b * (a - l) * (b - l),
        den,
    )?;
    checked_srg(SrgParams::new(p.n, k, lambda, mu))
}

/// Identities checked while deriving the Seidel-branch parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeidelIdentities {
    /// `n(ℓ - a²) = ℓ² - a²`
    pub n_identity: bool,
    /// `(an - ℓ - a) / 2a`
    pub valency: i64,
    /// Valency agrees with the closed-form `k`.
    pub valency_matches: bool,
}

/// Seidel branch `b = -a`: the regular graph in the switching class.
pub fn derive_seidel(n: i64, ell: i64, a: i64) -> Result<(SrgParams, SeidelIdentities), SplitError> {
    let (n_, l, a_) = (n as i128, ell as i128, a as i128);
    if a == 0 || l == a_ * a_ {
        return Err(SplitError::InfeasibleSeidel(format!("ell = a^2 or a = 0 at ({n}, {ell}, {a})")));
    }
    let n_identity = n_ * (l - a_ * a_) == l * l - a_ * a_;
    if !n_identity {
        return Err(SplitError::InfeasibleSeidel(format!(
            "n(ell - a^2) = {} differs from ell^2 - a^2 = {}",
            n_ * (l - a_ * a_),
            l * l - a_ * a_
        )));
    }
    let seidel = |name: &str, num: i128, den: i128| {
        rational_value(name, num, den).map_err(|e| SplitError::InfeasibleSeidel(e.to_string()))
    };
    let valency = seidel("valency", a_ * n_ - l - a_, 2 * a_)?;
    let den = a_ * (l - a_ * a_);
    let k = seidel("k", (a_ - 1) * l * (a_ + l), 2 * den)?;
    let lambda = seidel("lambda", (a_ + l) * (3 * a_ * a_ + a_ * l - a_ - 3 * l), 4 * den)?;
    let mu = seidel("mu", (a_ - 1) * (l * l - a_ * a_), 4 * den)?;
    let p = SrgParams::new(n, k, lambda, mu);
    if k < 0 || lambda < 0 || mu < 0 || !p.satisfies_identity() {
        return Err(SplitError::InfeasibleSeidel(format!("{p} is not a valid parameter set")));
    }
    Ok((p, SeidelIdentities { n_identity, valency, valency_matches: valency == k }))
}

/// `S = J - I - 2A`
pub fn seidel_matrix(adjacency: &IntMatrix) -> IntMatrix {
    let n = adjacency.rows();
    IntMatrix::from_fn(n, n, |i, j| if i == j { 0 } else { 1 - 2 * adjacency.get(i, j) })
}

/// With `A` marking the `+a` entries the Gram is `ℓI - aS`, so `G² = nG`
/// becomes `a²S² = a(2ℓ - n)S + ℓ(n - ℓ)I`.
fn seidel_identity_holds(p: &SplitParams, adjacency: &IntMatrix) -> bool {
    let s = seidel_matrix(adjacency);
    let n = s.rows();
    let lhs = (&s * &s).scale(p.a * p.a);
    let rhs = &s.scale(p.a * (2 * p.ell - p.n)) + &IntMatrix::identity(n).scale(p.ell * (p.n - p.ell));
    lhs == rhs
}

/// The quadratic identity of the Seidel matrix of a `b = -a` split.
pub fn verify_seidel_matrix(report: &SplitReport) -> bool {
    report.params.is_seidel() && seidel_identity_holds(&report.params, &report.adjacency)
}

/// `(n, n-ℓ, -b, -a)`
pub fn complement_split(report: &SplitReport) -> SplitParams {
    complement_params(&report.params)
}

pub fn complement_params(p: &SplitParams) -> SplitParams {
    SplitParams::new(p.n, p.n - p.ell, -p.b, -p.a)
}

/// Rows outside `rows`, in increasing order.
pub fn complement_rows(order: usize, rows: &[usize]) -> Vec<usize> {
    (0..order).filter(|r| !rows.contains(r)).collect()
}

/// For a `b = -a` split with an all-ones row outside it: the split on the
/// remaining rows minus the all-ones row.
pub fn delete_allones_transform(
    h: &HadamardMatrix,
    report: &SplitReport,
) -> Result<SplitReport, SplitError> {
    if !report.params.is_seidel() {
        return Err(SplitError::WrongParameters(format!("{} does not have b = -a", report.params)));
    }
    let ones = (0..h.order())
        .find(|&r| !report.rows.contains(&r) && h.row(r).iter().all(|&x| x == 1))
        .ok_or(SplitError::MissingAllOnesRow)?;
    let rows: Vec<usize> =
        (0..h.order()).filter(|&r| r != ones && !report.rows.contains(&r)).collect();
    check_split(h, &rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquiangularReport {
    pub m: i64,
    pub alpha_sq: Rational,
    pub bound: Rational,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquiangularSummary {
    pub m: i64,
    pub alpha_sq: ExactNumber,
    pub bound: ExactNumber,
    pub attained: bool,
}

impl EquiangularReport {
    pub fn summary(&self) -> EquiangularSummary {
        EquiangularSummary {
            m: self.m,
            alpha_sq: ExactNumber::from(&Gauss::real(self.alpha_sq.clone())),
            bound: ExactNumber::from(&Gauss::real(self.bound.clone())),
            attained: self.attained,
        }
    }
}

/// Relative bound for the `n` equiangular lines in `ℝ^ℓ` given by a
/// `b = -a` split.
pub fn equiangular_report(p: &SplitParams) -> Result<EquiangularReport, SplitError> {
    if !p.is_seidel() {
        return Err(SplitError::WrongParameters(format!("{p} does not have b = -a")));
    }
    derive_seidel(p.n, p.ell, p.a)?;
    let alpha_sq = rat(p.n - p.ell, p.ell * (p.n - 1));
    let m = rat(p.ell, 1);
    let one = rat(1, 1);
    let m_alpha = &m * &alpha_sq;
    if m_alpha >= one {
        return Err(SplitError::BoundInapplicable(m_alpha.to_string()));
    }
    let bound = &m * (&one - &alpha_sq) / (&one - m_alpha);
    let attained = bound == rat(p.n, 1);
    Ok(EquiangularReport { m: p.ell, alpha_sq, bound, attained })
}

/// `K = (H₁ᵀH₁ - H₂ᵀH₂) / 2a` for `(ℓ, a) = ((n ± √n)/2, √n/2)`, checked to
/// be Hadamard and unbiased with `H`.
pub fn unbiased_partner(h: &HadamardMatrix, report: &SplitReport) -> Result<HadamardMatrix, SplitError> {
    let p = report.params;
    let unbiased = p.is_seidel()
        && p.a > 0
        && 4 * p.a * p.a == p.n
        && (2 * p.ell == p.n + 2 * p.a || 2 * p.ell == p.n - 2 * p.a);
    if !unbiased {
        return Err(SplitError::NotUnbiasedCase(p));
    }
    let g1 = gram_of_rows(h.matrix(), &report.rows);
    let g2 = gram_of_rows(h.matrix(), &complement_rows(h.order(), &report.rows));
    let diff = &g1 - &g2;
    let two_a = 2 * p.a;
    if diff.as_slice().iter().any(|x| x % two_a != 0) {
        return Err(SplitError::NonIntegral("(H1'H1 - H2'H2) / 2a".into()));
    }
    let k = HadamardMatrix::new(diff.map(|x| x / two_a))?;
    let cross = h.matrix() * &k.matrix().transpose();
    if cross.as_slice().iter().any(|x| x.abs() != two_a) {
        return Err(SplitError::NotUnbiasedCase(p));
    }
    Ok(k)
}

/// Sign-normalizes a Hadamard matrix of order `4m²` with a
/// `(2m² - m, m, -m)` split into one whose column sums are all `2m`.
pub fn regular_hadamard_normalize(
    h: &HadamardMatrix,
    report: &SplitReport,
) -> Result<HadamardMatrix, SplitError> {
    let p = report.params;
    let m = p.a;
    let ok = m > 0 && p.n == 4 * m * m && p.ell == 2 * m * m - m && p.b == -m;
    if !ok {
        return Err(SplitError::WrongParameters(format!(
            "{p} is not (4m^2, 2m^2 - m, m, -m)"
        )));
    }
    let n = h.order();
    let src = h.matrix();
    // First column -1 on the split rows, +1 elsewhere.
    let row_sign: Vec<i64> = (0..n)
        .map(|i| {
            let want = if report.rows.contains(&i) { -1 } else { 1 };
            want * src.get(i, 0)
        })
        .collect();
    let rows_fixed = IntMatrix::from_fn(n, n, |i, j| src.get(i, j) * row_sign[i]);
    let col_sign: Vec<i64> = rows_fixed.col_sums().iter().map(|&s| if s < 0 { -1 } else { 1 }).collect();
    let out = IntMatrix::from_fn(n, n, |i, j| rows_fixed.get(i, j) * col_sign[j]);
    if out.col_sums().iter().any(|&s| s != 2 * m) {
        return Err(SplitError::WrongParameters(format!(
            "column sums {:?} are not all {}",
            out.col_sums(),
            2 * m
        )));
    }
    Ok(HadamardMatrix::new(out)?)
}

/// Eigenvalues of an adjacency matrix diagonalized by the rows of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagonalization {
    /// Eigenvalue belonging to each row of `H`.
    pub eigenvalues: Vec<i64>,
    /// Distinct eigenvalues, decreasing, with multiplicities.
    pub layout: Vec<(i64, usize)>,
}

/// `H A Hᵀ` must be diagonal; its diagonal divided by `n` gives the
/// eigenvalue of each row of `H`.
pub fn diagonalize_by_hadamard(a: &IntMatrix, h: &HadamardMatrix) -> Result<Diagonalization, SplitError> {
    if a.rows() != h.order() || !a.is_square() {
        return Err(MatrixError::Shape(format!(
            "adjacency {}x{} against Hadamard order {}",
            a.rows(),
            a.cols(),
            h.order()
        ))
        .into());
    }
    let hm = h.matrix();
    let d = &(hm * a) * &hm.transpose();
    let n = h.order();
    for i in 0..n {
        for j in 0..n {
            if i != j && d.get(i, j) != 0 {
                return Err(SplitError::NotDiagonalized { row: i, col: j, value: d.get(i, j) });
            }
        }
    }
    let mut eigenvalues = Vec::with_capacity(n);
    for i in 0..n {
        let x = d.get(i, i);
        if x % n as i64 != 0 {
            return Err(SplitError::NotDiagonalized { row: i, col: i, value: x });
        }
        eigenvalues.push(x / n as i64);
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &e in &eigenvalues {
        *counts.entry(e).or_default() += 1;
    }
    let layout = counts.into_iter().rev().collect();
    Ok(Diagonalization { eigenvalues, layout })
}

/// Converse direction: the rows of a normalized `H` carrying the larger
/// non-principal eigenvalue of a diagonalized strongly regular graph form a
/// split.
pub fn split_from_diagonalizable_srg(
    a: &IntMatrix,
    h: &HadamardMatrix,
) -> Result<SplitReport, SplitError> {
    let ones = h.all_ones_row().ok_or(SplitError::NotNormalized)?;
    let diag = diagonalize_by_hadamard(a, h)?;
    let theta = (0..h.order())
        .filter(|&r| r != ones)
        .map(|r| diag.eigenvalues[r])
        .max()
        .ok_or_else(|| SplitError::WrongParameters("order 1".into()))?;
    let rows: Vec<usize> =
        (0..h.order()).filter(|&r| r != ones && diag.eigenvalues[r] == theta).collect();
    check_split(h, &rows)
}

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000;

/// All `ℓ`-row subsets giving a split, one report per distinct parameter
/// tuple (the lexicographically first subset), in discovery order.
pub fn search_splits(
    h: &HadamardMatrix,
    ell: usize,
    budget: u128,
    exec: Exec,
) -> Result<Vec<SplitReport>, SplitError> {
    let n = h.order();
    if ell == 0 || ell > n {
        return Err(SplitError::EmptySubset);
    }
    let subsets = binomial(n as u128, ell as u128);
    if subsets > budget {
        return Err(SplitError::BudgetExceeded { subsets, budget });
    }
    let outer: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            let row = h.row(r);
            row.iter().flat_map(|&x| row.iter().map(move |&y| x * y)).collect()
        })
        .collect();
    let per_first = exec.map_range(n - ell + 1, |first| {
        let mut found: Vec<(SplitParams, Vec<usize>)> = Vec::new();
        let mut gram = outer[first].clone();
        let mut chosen = vec![first];
        dfs(&outer, n, ell, first + 1, &mut chosen, &mut gram, &mut found);
        found
    });
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (params, rows) in per_first.into_iter().flatten() {
        if seen.insert(params) {
            out.push(check_split(h, &rows)?);
        }
    }
    Ok(out)
}

fn dfs(
    outer: &[Vec<i64>],
    n: usize,
    ell: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    gram: &mut Vec<i64>,
    found: &mut Vec<(SplitParams, Vec<usize>)>,
) {
    if chosen.len() == ell {
        if let Some((a, b)) = two_values(gram, n) {
            let params = SplitParams::new(n as i64, ell as i64, a, b);
            if !found.iter().any(|(p, _)| *p == params) {
                found.push((params, chosen.clone()));
            }
        }
        return;
    }
    let remaining = ell - chosen.len();
    for r in start..=n - remaining {
        for (g, o) in gram.iter_mut().zip(&outer[r]) {
            *g += o;
        }
        chosen.push(r);
        dfs(outer, n, ell, r + 1, chosen, gram, found);
        chosen.pop();
        for (g, o) in gram.iter_mut().zip(&outer[r]) {
            *g -= o;
        }
    }
}

/// Scans column pairs, stopping at the third distinct off-diagonal value.
fn two_values(gram: &[i64], n: usize) -> Option<(i64, i64)> {
    let mut first: Option<i64> = None;
    let mut second: Option<i64> = None;
    for i in 0..n {
        for &x in &gram[i * n + i + 1..(i + 1) * n] {
            match (first, second) {
                (None, _) => first = Some(x),
                (Some(f), _) if f == x => {}
                (Some(_), None) => second = Some(x),
                (Some(_), Some(s)) if s == x => {}
                _ => return None,
            }
        }
    }
    let f = first.unwrap_or(0);
    let s = second.unwrap_or(f);
    Some((f.max(s), f.min(s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Srg16Class {
    Lattice,
    Shrikhande,
}

/// Tells the 4×4 rook graph from the Shrikhande graph by clique number.
pub fn classify_srg16(a: &IntMatrix) -> Result<Srg16Class, SplitError> {
    let p = SrgParams::of_adjacency(a);
    if p != Some(SrgParams::new(16, 6, 2, 2)) {
        return Err(SplitError::WrongParameters(format!(
            "expected SRG(16, 6, 2, 2), got {}",
            p.map_or("a non-SRG".to_string(), |p| p.to_string())
        )));
    }
    let g = BitGraph::from_adjacency(16, |i, j| a.get(i, j) == 1);
    match max_clique_size(&g) {
        4 => Ok(Srg16Class::Lattice),
        3 => Ok(Srg16Class::Shrikhande),
        w => Err(SplitError::WrongParameters(format!("clique number {w}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::sylvester;

    #[test]
    fn case_a_table_rows() {
        assert_eq!(derive_srg_case_a(16, 9, 1).unwrap(), (-3, SrgParams::new(16, 9, 4, 6)));
        assert_eq!(derive_srg_case_a(16, 5, 1).unwrap(), (-3, SrgParams::new(16, 10, 6, 6)));
        assert_eq!(derive_srg_case_a(64, 14, 6).unwrap(), (-2, SrgParams::new(64, 14, 6, 2)));
    }

    #[test]
    fn case_b_complement_of_case_a() {
        let (b, p) = derive_srg_case_b(16, 11, 3).unwrap();
        assert_eq!(b, -1);
        assert_eq!(p, SrgParams::new(16, 10, 6, 6).complement());
        assert!(matches!(derive_srg_case_b(16, 7, 2), Err(SplitError::NonIntegral(_))));
        for (n, l, a) in [(16, 9, 1), (16, 5, 1), (64, 14, 6), (64, 49, 1), (64, 35, 3)] {
            let (b, pa) = derive_srg_case_a(n, l, a).unwrap();
            let (bb, pb) = derive_srg_case_b(n, n - l, -b).unwrap();
            assert_eq!(bb, -a);
            assert_eq!(pb, pa.complement());
        }
    }

    #[test]
    fn general_formulas_agree_with_closed_forms() {
        for (n, l, a) in [(16, 9, 1), (16, 5, 1), (64, 14, 6), (64, 21, 5), (64, 45, 5)] {
            let (b, p) = derive_srg_case_a(n, l, a).unwrap();
            assert_eq!(srg_from_general(&SplitParams::new(n, l, a, b)).unwrap(), p);
        }
    }

    #[test]
    fn seidel_parameters() {
        let (p, ids) = derive_seidel(16, 6, 2).unwrap();
        assert_eq!(p, SrgParams::new(16, 6, 2, 2));
        assert!(ids.n_identity && ids.valency_matches);
        let (p, ids) = derive_seidel(64, 28, 4).unwrap();
        assert_eq!(p, SrgParams::new(64, 28, 12, 12));
        assert_eq!(ids.valency, 28);
        assert!(derive_seidel(36, 15, 3).is_ok());
        assert!(matches!(derive_seidel(16, 7, 2), Err(SplitError::InfeasibleSeidel(_))));
    }

    #[test]
    fn trivial_splits() {
        let h = sylvester(4);
        let all_but_one: Vec<usize> = (1..16).collect();
        let r = check_split(&h, &all_but_one).unwrap();
        assert_eq!(r.params, SplitParams::new(16, 15, -1, -1));
        assert_eq!(r.branch, Branch::SingleValue);
        let all: Vec<usize> = (0..16).collect();
        assert_eq!(check_split(&h, &all).unwrap().params, SplitParams::new(16, 16, 0, 0));
        assert_eq!(check_split(&h, &[0]).unwrap().params, SplitParams::new(16, 1, 1, 1));
        let single = check_split(&h, &[5]).unwrap();
        assert_eq!(single.params, SplitParams::new(16, 1, 1, -1));
        assert!(matches!(check_split(&h, &[]), Err(SplitError::EmptySubset)));
        assert!(matches!(check_split(&h, &[16]), Err(SplitError::RowOutOfRange { .. })));
    }

    #[test]
    fn non_splittable_subset() {
        let h = sylvester(3);
        assert!(matches!(check_split(&h, &[1, 2, 4]), Err(SplitError::NotSplittable { .. })));
    }

    #[test]
    fn equiangular_values() {
        let r = equiangular_report(&SplitParams::new(16, 6, 2, -2)).unwrap();
        assert_eq!(r.alpha_sq, rat(1, 9));
        assert_eq!(r.bound, rat(16, 1));
        assert!(r.attained);
        let r = equiangular_report(&SplitParams::new(64, 28, 4, -4)).unwrap();
        assert_eq!(r.alpha_sq, rat(1, 49));
        assert!(r.attained);
        assert!(equiangular_report(&SplitParams::new(16, 7, 2, -2)).is_err());
    }

    #[test]
    fn search_small_cases() {
        let h = sylvester(4);
        let found = search_splits(&h, 16, DEFAULT_SEARCH_BUDGET, Exec::Sequential).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].params, SplitParams::new(16, 16, 0, 0));
        assert!(matches!(
            search_splits(&sylvester(6), 20, DEFAULT_SEARCH_BUDGET, Exec::Sequential),
            Err(SplitError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn diagonalization_failure_on_path() {
        let p4 = IntMatrix::from_fn(4, 4, |i, j| i64::from(i.abs_diff(j) == 1));
        assert!(matches!(
            diagonalize_by_hadamard(&p4, &sylvester(2)),
            Err(SplitError::NotDiagonalized { .. })
        ));
        let id = diagonalize_by_hadamard(&IntMatrix::identity(4), &sylvester(2)).unwrap();
        assert_eq!(id.layout, vec![(1, 4)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 6), 8008);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}
