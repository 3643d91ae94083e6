//! Parameter enumeration, the mod-4 non-existence filters and the
//! eigenvector search used to rule out parameter sets.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clique::{max_clique, BitGraph};
use crate::constructions::{find_witness, Witness};
use crate::exec::Exec;
use crate::field::{inverse, int, mat_mul, nullspace, ExactNumber, Gauss, Mat, Rational};
use crate::matrix::IntMatrix;
use crate::splittability::{case_a_b, derive_seidel, derive_srg_case_a, SplitParams};
use crate::srg::SrgParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeasibilityError {
    #[error("eigenvalue {n} has multiplicity {found}, expected {expected}")]
    MultiplicityMismatch { n: i64, expected: usize, found: usize },
    #[error("adjacency matrix must be square 0/1 symmetric, got {0}")]
    BadAdjacency(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExistsByConstruction,
    ExcludedMod4Sum,
    ExcludedMod4Diff,
    ExcludedEigsearch,
    /// Ruled out by a known non-existence result for the derived graph.
    ExcludedExternal,
    Open,
}

impl Status {
    pub fn is_excluded(self) -> bool {
        matches!(
            self,
            Status::ExcludedMod4Sum | Status::ExcludedMod4Diff | Status::ExcludedEigsearch | Status::ExcludedExternal
        )
    }

    /// Short table annotation.
    pub fn label(self) -> &'static str {
        match self {
            Status::ExistsByConstruction => "E",
            Status::Open => "",
            _ => "NE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignKind {
    Sum,
    Diff,
}

/// Solution of the 4×4 sign-count system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSolution {
    pub kind: SignKind,
    pub values: [Rational; 4],
    /// All four values are nonnegative integers.
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSolutionSummary {
    pub kind: SignKind,
    pub values: Vec<ExactNumber>,
    pub feasible: bool,
}

impl SignSolution {
    pub fn summary(&self) -> SignSolutionSummary {
        SignSolutionSummary {
            kind: self.kind,
            values: self.values.iter().map(|v| ExactNumber::from(&Gauss::real(v.clone()))).collect(),
            feasible: self.feasible,
        }
    }
}

/// Counts `(x, y, z, w)` of the four column sign patterns on three rows of a
/// normalized split: the rows of the system are `x+y+z+w`, `x+y-z-w`,
/// `x-y+z-w`, `x-y-z+w`, with right-hand side `(ℓ, a, a, -a)` for `Sum` and
/// `(ℓ, a, a, a)` for `Diff`.
pub fn solve_sign_pattern(kind: SignKind, ell: i64, a: i64) -> SignSolution {
    let system: Mat<Rational> = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    let last = match kind {
        SignKind::Sum => -a,
        SignKind::Diff => a,
    };
    let rhs: Mat<Rational> = [ell, a, a, last].iter().map(|&x| vec![int(x)]).collect();
    let inv = inverse(&system).expect("sign system is invertible");
    let sol = mat_mul(&inv, &rhs);
    let values: [Rational; 4] = std::array::from_fn(|i| sol[i][0].clone());
    let feasible = values.iter().all(|v| v.is_integer() && !v.is_negative());
    SignSolution { kind, values, feasible }
}

/// `(ℓ, a, -a)` splits need `ℓ + a ≡ 0 (mod 4)`.
pub fn filter_mod4_sum(ell: i64, a: i64) -> bool {
    (ell + a).rem_euclid(4) != 0
}

/// `(ℓ, a, -a)` splits with `a > 1` need `ℓ ≡ a (mod 4)`.
pub fn filter_mod4_diff(ell: i64, a: i64) -> bool {
    a > 1 && (ell - a).rem_euclid(4) != 0
}

/// Where a graph catalog for an eigenvector search comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Catalog {
    /// Shipped with this crate; the search can be rerun locally.
    Bundled,
    /// Must be supplied by the user (directory of adjacency files).
    External,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    None,
    Construction { witness: Witness },
    SignPattern { solution: SignSolutionSummary },
    /// Every graph with parameters `graph` admits fewer than `ℓ` mutually
    /// orthogonal ±1 eigenvectors.
    EigSearch { graph: SrgParams, graphs: u32, catalog: Catalog },
    External { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibleRow {
    pub params: SplitParams,
    pub srg: SrgParams,
    pub status: Status,
    pub evidence: Evidence,
}

/// Graph parameter sets with a known non-existence result, keyed by the
/// Seidel-branch split parameters.
pub fn external_exclusion(p: &SplitParams) -> Option<String> {
    match (p.n, p.ell, p.a, p.b) {
        (96, 20, 4, -4) => Some("the descendant SRG(95, 40, 12, 20) does not exist".into()),
        _ => None,
    }
}

/// Order-36 parameter sets ruled out by searching every graph with the given
/// parameters. Each entry: split, graph searched, number of graphs, catalog.
pub const EIGSEARCH_CERTIFICATES: [(SplitParams, SrgParams, u32, Catalog); 4] = [
    (SplitParams { n: 36, ell: 10, a: 4, b: -2 }, SrgParams { v: 36, k: 10, lambda: 4, mu: 2 }, 1, Catalog::Bundled),
    (SplitParams { n: 36, ell: 25, a: 1, b: -5 }, SrgParams { v: 36, k: 25, lambda: 16, mu: 20 }, 1, Catalog::Bundled),
    (SplitParams { n: 36, ell: 14, a: 2, b: -4 }, SrgParams { v: 36, k: 21, lambda: 12, mu: 12 }, 180, Catalog::External),
    (SplitParams { n: 36, ell: 20, a: 2, b: -4 }, SrgParams { v: 36, k: 20, lambda: 10, mu: 12 }, 32548, Catalog::External),
];

fn eigsearch_certificate(p: &SplitParams) -> Option<Evidence> {
    EIGSEARCH_CERTIFICATES
        .iter()
        .find(|(q, ..)| q == p)
        .map(|&(_, graph, graphs, catalog)| Evidence::EigSearch { graph, graphs, catalog })
}

fn witness_evidence(p: &SplitParams) -> Option<(Status, Evidence)> {
    find_witness(p).map(|witness| (Status::ExistsByConstruction, Evidence::Construction { witness }))
}

fn integer_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = num_integer::Roots::sqrt(&x);
    (r * r == x).then_some(r)
}

/// Every `b = -a` row, including those excluded by external results.
pub fn enumerate_seidel_all(max_n: i64) -> Vec<FeasibleRow> {
    let mut rows = Vec::new();
    for n in (4..=max_n).step_by(4) {
        for ell in 2..=n / 2 {
            let num = ell * (n - ell);
            if num % (n - 1) != 0 {
                continue;
            }
            let Some(a) = integer_sqrt(num / (n - 1)) else { continue };
            if a < 1 {
                continue;
            }
            let Ok((srg, _)) = derive_seidel(n, ell, a) else { continue };
            let params = SplitParams::new(n, ell, a, -a);
            let (status, evidence) = if filter_mod4_sum(ell, a) {
                let solution = solve_sign_pattern(SignKind::Sum, ell, a).summary();
                (Status::ExcludedMod4Sum, Evidence::SignPattern { solution })
            } else if filter_mod4_diff(ell, a) {
                let solution = solve_sign_pattern(SignKind::Diff, ell, a).summary();
                (Status::ExcludedMod4Diff, Evidence::SignPattern { solution })
            } else if let Some(reason) = external_exclusion(&params) {
                (Status::ExcludedExternal, Evidence::External { reason })
            } else {
                witness_evidence(&params).unwrap_or((Status::Open, Evidence::None))
            };
            rows.push(FeasibleRow { params, srg, status, evidence });
        }
    }
    rows
}

/// `b = -a` rows with `n ≤ max_n`, `ℓ ≤ n/2`, omitting parameter sets whose
/// graph is known not to exist.
pub fn enumerate_seidel(max_n: i64) -> Vec<FeasibleRow> {
    enumerate_seidel_all(max_n).into_iter().filter(|r| r.status != Status::ExcludedExternal).collect()
}

/// Case (a) rows with `0 < a < ℓ < n - 1` whose graph and complement have
/// feasible parameters.
pub fn enumerate_case_a(max_n: i64) -> Vec<FeasibleRow> {
    let mut rows = Vec::new();
    for n in (4..=max_n).step_by(4) {
        for ell in 2..n - 1 {
            for a in 1..ell {
                if (ell - a) % 2 != 0 {
                    continue;
                }
                let Some(b) = case_a_b(n, ell, a) else { continue };
                if b >= a || b == -a {
                    continue;
                }
                let Ok((_, srg)) = derive_srg_case_a(n, ell, a) else { continue };
                if !srg.is_feasible() {
                    continue;
                }
                let params = SplitParams::new(n, ell, a, b);
                let (status, evidence) = if let Some(e) = eigsearch_certificate(&params) {
                    (Status::ExcludedEigsearch, e)
                } else {
                    witness_evidence(&params).unwrap_or((Status::Open, Evidence::None))
                };
                rows.push(FeasibleRow { params, srg, status, evidence });
            }
        }
    }
    rows
}

/// Outcome of the eigenvector search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigSearchResult {
    pub n: i64,
    pub ell: i64,
    pub a: i64,
    pub b: i64,
    /// ±1 eigenvectors found, up to sign.
    pub candidates: usize,
    pub max_set: usize,
    /// A largest mutually orthogonal set.
    pub witness: Vec<Vec<i64>>,
    /// `max_set < ℓ`: no split with this graph and these parameters.
    pub rules_out: bool,
}

/// One pivot coordinate as a function of the free ones:
/// `den · x_p = Σ coeffs[d] · x_{free[d]}`.
struct Dependent {
    coeffs: Vec<i64>,
    den: i64,
    /// `suffix[d] = Σ_{e ≥ d} |coeffs[e]|`
    suffix: Vec<i64>,
}

impl Dependent {
    fn can_reach(&self, partial: i64, depth: usize) -> bool {
        let rest = self.suffix[depth];
        let (lo, hi) = (partial - rest, partial + rest);
        (lo..=hi).contains(&self.den) || (lo..=hi).contains(&-self.den)
    }
}

/// All ±1 vectors of the eigenvalue-`n` eigenspace of
/// `B = ℓI + aA + b(J - A - I)`, then a maximum mutually orthogonal subset.
pub fn eigvec_search(
    adjacency: &IntMatrix,
    ell: i64,
    a: i64,
    b: i64,
    exec: Exec,
) -> Result<EigSearchResult, FeasibilityError> {
    if !adjacency.is_square() || !adjacency.is_zero_one() || !adjacency.is_symmetric() {
        return Err(FeasibilityError::BadAdjacency(format!("{}x{}", adjacency.rows(), adjacency.cols())));
    }
    let n = adjacency.rows();
    let n_ = n as i64;
    let m: Mat<Rational> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = if i == j {
                        ell - n_
                    } else if adjacency.get(i, j) == 1 {
                        a
                    } else {
                        b
                    };
                    int(x)
                })
                .collect()
        })
        .collect();
    let ns = nullspace(&m);
    if ns.free.len() as i64 != ell {
        return Err(FeasibilityError::MultiplicityMismatch {
            n: n_,
            expected: ell.max(0) as usize,
            found: ns.free.len(),
        });
    }
    let deps: Vec<Dependent> = ns
        .reduced
        .iter()
        .map(|row| {
            let den = ns.free.iter().fold(num_bigint::BigInt::one(), |acc, &f| acc.lcm(row[f].denom()));
            let coeffs: Vec<i64> = ns
                .free
                .iter()
                .map(|&f| {
                    let scaled = -(&row[f] * Rational::from_integer(den.clone()));
                    scaled.to_integer().to_i64().expect("coefficient fits in i64")
                })
                .collect();
            let mut suffix = vec![0; coeffs.len() + 1];
            for d in (0..coeffs.len()).rev() {
                suffix[d] = suffix[d + 1] + coeffs[d].abs();
            }
            Dependent { coeffs, den: den.to_i64().expect("denominator fits in i64"), suffix }
        })
        .collect();
    let dims = ns.free.len();
    // touched[d]: dependents with a nonzero coefficient at free position d.
    let touched: Vec<Vec<usize>> = (0..dims)
        .map(|d| (0..deps.len()).filter(|&i| deps[i].coeffs[d] != 0).collect())
        .collect();

    let ctx = SearchCtx { deps: &deps, touched: &touched, dims };
    // The first free coordinate is fixed to +1; the next `prefix` are
    // enumerated up front to split the work.
    let prefix = dims.saturating_sub(1).min(10);
    let tasks = 1usize << prefix;
    let found: Vec<Vec<Vec<i8>>> = exec.map_range(tasks, |task| {
        let mut signs = vec![0i8; dims];
        let mut partial = vec![0i64; deps.len()];
        let mut out = Vec::new();
        if dims == 0 {
            return out;
        }
        for d in 0..=prefix {
            let s = if d == 0 || task >> (prefix - d) & 1 == 0 { 1 } else { -1 };
            if !ctx.assign(d, s, &mut signs, &mut partial) {
                return out;
            }
        }
        ctx.dfs(prefix + 1, &mut signs, &mut partial, &mut out);
        out
    });

    let vectors: Vec<Vec<i64>> = found
        .into_iter()
        .flatten()
        .map(|signs| {
            let mut v = vec![0i64; n];
            for (d, &f) in ns.free.iter().enumerate() {
                v[f] = i64::from(signs[d]);
            }
            for (dep, &p) in deps.iter().zip(&ns.pivots) {
                let s: i64 = dep.coeffs.iter().zip(&signs).map(|(c, &x)| c * i64::from(x)).sum();
                v[p] = s / dep.den;
            }
            v
        })
        .collect();
    let dot = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<i64>();
    let g = BitGraph::from_adjacency(vectors.len(), |i, j| dot(&vectors[i], &vectors[j]) == 0);
    let clique = max_clique(&g);
    let witness: Vec<Vec<i64>> = clique.iter().map(|&i| vectors[i].clone()).collect();
    Ok(EigSearchResult {
        n: n_,
        ell,
        a,
        b,
        candidates: vectors.len(),
        max_set: witness.len(),
        rules_out: (witness.len() as i64) < ell,
        witness,
    })
}

struct SearchCtx<'a> {
    deps: &'a [Dependent],
    touched: &'a [Vec<usize>],
    dims: usize,
}

impl SearchCtx<'_> {
    /// Sets free coordinate `d`; false if some dependent can no longer be ±1.
    fn assign(&self, d: usize, s: i8, signs: &mut [i8], partial: &mut [i64]) -> bool {
        signs[d] = s;
        let mut ok = true;
        for &i in &self.touched[d] {
            partial[i] += self.deps[i].coeffs[d] * i64::from(s);
            ok &= self.deps[i].can_reach(partial[i], d + 1);
        }
        ok
    }

    fn unassign(&self, d: usize, signs: &mut [i8], partial: &mut [i64]) {
        let s = signs[d];
        for &i in &self.touched[d] {
            partial[i] -= self.deps[i].coeffs[d] * i64::from(s);
        }
        signs[d] = 0;
    }

    fn dfs(&self, d: usize, signs: &mut Vec<i8>, partial: &mut Vec<i64>, out: &mut Vec<Vec<i8>>) {
        if d == self.dims {
            out.push(signs.clone());
            return;
        }
        for s in [1i8, -1] {
            if self.assign(d, s, signs, partial) {
                self.dfs(d + 1, signs, partial, out);
            }
            self.unassign(d, signs, partial);
        }
    }
}

/// `a² = ℓ(n - ℓ)/(n - 1)` for a `b = -a` row.
pub fn seidel_identity(p: &SplitParams) -> bool {
    p.n > 1 && p.a * p.a * (p.n - 1) == p.ell * (p.n - p.ell)
}
