//! Association schemes with 4, 5 and 6 classes from a split Hadamard matrix
//! and Latin squares.

use serde::{Deserialize, Serialize};

use crate::constructions::BshInstance;
use crate::exec::Exec;
use crate::latin::{is_ufs_family, LatinSquare};
use crate::matrix::IntMatrix;
use crate::splittability::SplitParams;
use crate::srg::complement_graph;

use super::auxiliary::{lift_latin, AuxiliarySet};
use super::{verify_scheme, Scheme, SchemeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Symmetric,
    NonSymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    FourClass(Symmetry),
    FiveClass,
    SixClass,
}

/// A verified scheme with the data it was built from.
#[derive(Clone, Debug)]
pub struct BuiltScheme {
    pub scheme: Scheme,
    pub kind: SchemeKind,
    pub params: SplitParams,
    /// Number of Latin squares (1 for the 4-class schemes).
    pub f: usize,
}

struct Prepared {
    aux: AuxiliarySet,
    adjacency: IntMatrix,
    rows: Vec<usize>,
    params: SplitParams,
}

fn prepare(bsh: &BshInstance) -> Result<Prepared, SchemeError> {
    let params = bsh.report.params;
    if params.a == params.b {
        return Err(SchemeError::Precondition(format!("{params} has a single off-diagonal value")));
    }
    let aux = AuxiliarySet::new(&bsh.h)?;
    let rows = bsh.split_rows.clone();
    if !aux.annihilates_ones(&rows) {
        return Err(SchemeError::Precondition("a split row has nonzero sum (C_i J != O)".into()));
    }
    Ok(Prepared { aux, adjacency: bsh.report.adjacency.clone(), rows, params })
}

fn positive_part(m: &IntMatrix) -> IntMatrix {
    m.map(|x| i64::from(x > 0))
}

fn negative_part(m: &IntMatrix) -> IntMatrix {
    m.map(|x| i64::from(x < 0))
}

/// `A₁ = I ⊗ A`, `A₂ = I ⊗ (J - A - I)`, `A₃ - A₄ = L̃` for a symmetric Latin
/// square of order `ℓ + 1` on `0..=ℓ` with zero diagonal. The non-symmetric
/// variant negates the blocks below the diagonal.
pub fn build_4class(
    bsh: &BshInstance,
    square: &LatinSquare,
    symmetry: Symmetry,
    exec: Exec,
) -> Result<BuiltScheme, SchemeError> {
    let prep = prepare(bsh)?;
    let ell = prep.params.ell;
    if ell % 2 == 0 {
        return Err(SchemeError::OddityViolation(ell));
    }
    let v = ell as usize + 1;
    if square.order() != v || square.min_symbol() != 0 {
        return Err(SchemeError::Precondition(format!("need a Latin square of order {v} on 0..={ell}")));
    }
    if !square.is_symmetric() || !square.has_constant_diagonal(0) {
        return Err(SchemeError::Precondition("Latin square must be symmetric with zero diagonal".into()));
    }
    let n = prep.aux.order();
    let mut lift = lift_latin(&prep.aux, square, &prep.rows)?;
    if symmetry == Symmetry::NonSymmetric {
        lift = IntMatrix::from_fn(v * n, v * n, |x, y| if x / n > y / n { -lift.get(x, y) } else { lift.get(x, y) });
    }
    let id = IntMatrix::identity(v);
    let matrices = vec![
        IntMatrix::identity(v * n),
        id.kron(&prep.adjacency),
        id.kron(&complement_graph(&prep.adjacency)),
        positive_part(&lift),
        negative_part(&lift),
    ];
    let scheme = verify_scheme(matrices, exec)?;
    Ok(BuiltScheme { scheme, kind: SchemeKind::FourClass(symmetry), params: prep.params, f: 1 })
}

/// `(1/n)(L̃_s L̃_tᵀ)` off the diagonal blocks, zero on them.
fn cross_gram(lifts: &[IntMatrix], n: usize, exec: Exec) -> Result<IntMatrix, SchemeError> {
    let f = lifts.len();
    let size = lifts[0].rows();
    let pairs: Vec<(usize, usize)> = (0..f).flat_map(|s| (0..f).map(move |t| (s, t))).filter(|(s, t)| s != t).collect();
    let blocks = exec.map(&pairs, |&(s, t)| &lifts[s] * &lifts[t].transpose());
    let dim = f * size;
    let mut out = vec![0i64; dim * dim];
    for (&(s, t), block) in pairs.iter().zip(&blocks) {
        for x in 0..size {
            for y in 0..size {
                let e = block.get(x, y);
                if e % n as i64 != 0 {
                    return Err(SchemeError::Precondition(format!("L{s} L{t}ᵀ is not divisible by n")));
                }
                out[(s * size + x) * dim + t * size + y] = e / n as i64;
            }
        }
    }
    Ok(IntMatrix::new(dim, dim, out)?)
}

fn multi_square(
    bsh: &BshInstance,
    family: &[LatinSquare],
    with_zero: bool,
    exec: Exec,
) -> Result<(Prepared, Vec<IntMatrix>, IntMatrix), SchemeError> {
    let prep = prepare(bsh)?;
    if family.len() < 2 {
        return Err(SchemeError::Precondition("need at least two Latin squares".into()));
    }
    let ell = prep.params.ell as usize;
    let (order, min) = if with_zero { (ell + 1, 0) } else { (ell, 1) };
    for sq in family {
        if sq.order() != order || sq.min_symbol() != min {
            return Err(SchemeError::Precondition(format!(
                "need Latin squares of order {order} on symbols starting at {min}"
            )));
        }
        if with_zero && !sq.has_constant_diagonal(0) {
            return Err(SchemeError::Precondition("Latin squares must have zero diagonal".into()));
        }
    }
    if !is_ufs_family(family, exec) {
        return Err(SchemeError::UfsViolation);
    }
    let lifts: Vec<IntMatrix> =
        family.iter().map(|sq| lift_latin(&prep.aux, sq, &prep.rows)).collect::<Result<_, _>>()?;
    let cross = cross_gram(&lifts, prep.aux.order(), exec)?;
    Ok((prep, lifts, cross))
}

/// Five classes from `f ≥ 2` mutually UFS Latin squares on `1..=ℓ`:
/// `A₁, A₂` as above on each block, `A₃ - A₄` from the cross Gram blocks,
/// `A₅ = I_f ⊗ (J_ℓ - I_ℓ) ⊗ J_n`.
pub fn build_5class(bsh: &BshInstance, family: &[LatinSquare], exec: Exec) -> Result<BuiltScheme, SchemeError> {
    let (prep, _, cross) = multi_square(bsh, family, false, exec)?;
    let f = family.len();
    let ell = prep.params.ell as usize;
    let n = prep.aux.order();
    let id = IntMatrix::identity(f * ell);
    let jl = &IntMatrix::ones(ell, ell) - &IntMatrix::identity(ell);
    let matrices = vec![
        IntMatrix::identity(f * ell * n),
        id.kron(&prep.adjacency),
        id.kron(&complement_graph(&prep.adjacency)),
        positive_part(&cross),
        negative_part(&cross),
        IntMatrix::identity(f).kron(&jl).kron(&IntMatrix::ones(n, n)),
    ];
    let scheme = verify_scheme(matrices, exec)?;
    Ok(BuiltScheme { scheme, kind: SchemeKind::FiveClass, params: prep.params, f })
}

/// Six classes from `f ≥ 2` mutually UFS Latin squares on `0..=ℓ` with zero
/// diagonal; adds `A₅ = I_f ⊗ (J - I) ⊗ J_n` and `A₆ = (J_f - I_f) ⊗ I ⊗ J_n`.
pub fn build_6class(bsh: &BshInstance, family: &[LatinSquare], exec: Exec) -> Result<BuiltScheme, SchemeError> {
    let (prep, _, cross) = multi_square(bsh, family, true, exec)?;
    let f = family.len();
    let v = prep.params.ell as usize + 1;
    let n = prep.aux.order();
    let id = IntMatrix::identity(f * v);
    let jv = &IntMatrix::ones(v, v) - &IntMatrix::identity(v);
    let jf = &IntMatrix::ones(f, f) - &IntMatrix::identity(f);
    let jn = IntMatrix::ones(n, n);
    let matrices = vec![
        IntMatrix::identity(f * v * n),
        id.kron(&prep.adjacency),
        id.kron(&complement_graph(&prep.adjacency)),
        positive_part(&cross),
        negative_part(&cross),
        IntMatrix::identity(f).kron(&jv).kron(&jn),
        jf.kron(&IntMatrix::identity(v)).kron(&jn),
    ];
    let scheme = verify_scheme(matrices, exec)?;
    Ok(BuiltScheme { scheme, kind: SchemeKind::SixClass, params: prep.params, f })
}

/// `(A₃ - A₄)² = n(f-1)(ℓA₀ + aA₁ + bA₂) + n(f-2)(A₃ - A₄)` on a 5- or
/// 6-class scheme.
pub fn cross_square_identity(built: &BuiltScheme) -> bool {
    let s = &built.scheme;
    let SplitParams { n, ell, a, b } = built.params;
    let f = built.f as i64;
    let d = s.matrix(3) - s.matrix(4);
    let base = &(&s.matrix(0).scale(ell) + &s.matrix(1).scale(a)) + &s.matrix(2).scale(b);
    let rhs = &base.scale(n * (f - 1)) + &d.scale(n * (f - 2));
    (&d * &d) == rhs
}

/// `(A₀ + A₁ + A₂)(A₃ - A₄) = O` and `(aA₁ + bA₂)(A₃ - A₄) = (n - ℓ)(A₃ - A₄)`.
pub fn cross_product_identities(built: &BuiltScheme) -> bool {
    let s = &built.scheme;
    let SplitParams { n, ell, a, b } = built.params;
    let d = s.matrix(3) - s.matrix(4);
    let sum = &(s.matrix(0) + s.matrix(1)) + s.matrix(2);
    let weighted = &s.matrix(1).scale(a) + &s.matrix(2).scale(b);
    (&sum * &d).is_zero() && (&weighted * &d) == d.scale(n - ell)
}
