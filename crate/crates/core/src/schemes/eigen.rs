//! First and second eigenmatrices of a commutative scheme, computed exactly
//! from the intersection numbers.
//!
//! The characters of the Bose–Mesner algebra are the common eigenvectors
//! `χ` of the intersection matrices `(B_i)_{jk} = p_{ij}^k`, normalized by
//! `χ_0 = 1`; then `P_{m,i} = χ_m(i)` and `Q = |X| P⁻¹`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::field::{identity, inverse, mat_mul, nullspace, ExactNumber, Field, Gauss, Mat, Rational};

use super::{Scheme, SchemeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenmatrices {
    /// Row 0 is the trivial character (the valencies); the others are sorted.
    pub p: Mat<Gauss>,
    pub q: Mat<Gauss>,
    pub multiplicities: Vec<i64>,
    pub valencies: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSummary {
    pub p: Vec<Vec<ExactNumber>>,
    pub q: Vec<Vec<ExactNumber>>,
    pub multiplicities: Vec<i64>,
    pub valencies: Vec<i64>,
}

impl Eigenmatrices {
    pub fn summary(&self) -> EigenSummary {
        let conv = |m: &Mat<Gauss>| m.iter().map(|r| r.iter().map(ExactNumber::from).collect()).collect();
        EigenSummary {
            p: conv(&self.p),
            q: conv(&self.q),
            multiplicities: self.multiplicities.clone(),
            valencies: self.valencies.clone(),
        }
    }
}

/// `B_i` with `(B_i)_{jk} = p_{ij}^k`, so that `B_i χ = χ(i) χ`.
pub fn intersection_matrix(scheme: &Scheme, i: usize) -> Mat<Gauss> {
    let d1 = scheme.classes() + 1;
    (0..d1).map(|j| (0..d1).map(|k| Gauss::from_i64(scheme.intersection(i, j, k))).collect()).collect()
}

/// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier;
/// coefficients from the constant term up.
pub fn char_poly(m: &Mat<Gauss>) -> Vec<Gauss> {
    let n = m.len();
    let mut coeffs = vec![Gauss::zero(); n + 1];
    coeffs[n] = Gauss::one();
    let mut mk: Mat<Gauss> = identity(n);
    for k in 1..=n {
        let am = mat_mul(m, &mk);
        let tr = (0..n).fold(Gauss::zero(), |acc, i| acc.add(&am[i][i]));
        let c = tr.neg().div(&Gauss::from_i64(k as i64));
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = row[i].add(&c);
        }
    }
    coeffs
}

fn to_i128(r: &Rational) -> Option<i128> {
    r.is_integer().then(|| r.to_integer().to_i128()).flatten()
}

/// Horner evaluation over the Gaussian integers; `None` on overflow.
fn eval(coeffs: &[(i128, i128)], x: (i128, i128)) -> Option<(i128, i128)> {
    let mut acc = (0i128, 0i128);
    for &(cr, ci) in coeffs.iter().rev() {
        let re = acc.0.checked_mul(x.0)?.checked_sub(acc.1.checked_mul(x.1)?)?;
        let im = acc.0.checked_mul(x.1)?.checked_add(acc.1.checked_mul(x.0)?)?;
        acc = (re.checked_add(cr)?, im.checked_add(ci)?);
    }
    Some(acc)
}

/// The distinct Gaussian-integer roots with `|θ| ≤ bound`.
fn gaussian_roots(poly: &[Gauss], bound: i64, real_only: bool) -> Result<Vec<Gauss>, SchemeError> {
    let coeffs: Vec<(i128, i128)> = poly
        .iter()
        .map(|c| match (to_i128(&c.re), to_i128(&c.im)) {
            (Some(r), Some(i)) => Ok((r, i)),
            _ => Err(SchemeError::Eigen(format!("characteristic polynomial coefficient {c} is not integral"))),
        })
        .collect::<Result<_, _>>()?;
    let b = i128::from(bound);
    let im_range = if real_only { 0..=0 } else { -b..=b };
    let mut roots = Vec::new();
    for im in im_range {
        for re in -b..=b {
            if re * re + im * im > b * b {
                continue;
            }
            let v = eval(&coeffs, (re, im))
                .ok_or_else(|| SchemeError::Eigen("overflow evaluating the characteristic polynomial".into()))?;
            if v == (0, 0) {
                roots.push(Gauss::from_ints(re as i64, im as i64));
            }
        }
    }
    Ok(roots)
}

fn sub_scalar(m: &Mat<Gauss>, t: &Gauss) -> Mat<Gauss> {
    m.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, x)| if i == j { x.sub(t) } else { x.clone() }).collect())
        .collect()
}

/// Computes `P`, `Q` and the multiplicities, then checks `PQ = |X|I`,
/// `m_j conj(P_{ji}) = k_i Q_{ij}` and the idempotent relations in the
/// algebra.
pub fn eigenmatrices(scheme: &Scheme) -> Result<Eigenmatrices, SchemeError> {
    let d1 = scheme.classes() + 1;
    let v = scheme.order() as i64;
    let valencies = scheme.valencies();
    // Columns of each basis span a common eigenspace of B_0..B_{i-1}.
    let mut spaces: Vec<Mat<Gauss>> = vec![identity(d1)];
    for i in 1..d1 {
        let b = intersection_matrix(scheme, i);
        let roots = gaussian_roots(&char_poly(&b), valencies[i], scheme.transpose_of(i) == i)?;
        let mut next = Vec::new();
        for w in &spaces {
            let dim = w[0].len();
            let mut found = 0;
            for t in &roots {
                let ns = nullspace(&mat_mul(&sub_scalar(&b, t), w));
                if ns.basis.is_empty() {
                    continue;
                }
                found += ns.basis.len();
                next.push(mat_mul(w, &crate::field::transpose(&ns.basis)));
            }
            if found != dim {
                return Err(SchemeError::IrrationalEigenvalue(format!(
                    "B{i} has eigenvalues outside the Gaussian integers"
                )));
            }
        }
        spaces = next;
    }
    if let Some(w) = spaces.iter().find(|w| w[0].len() != 1) {
        return Err(SchemeError::Eigen(format!("a common eigenspace has dimension {}", w[0].len())));
    }
    let mut chars: Vec<Vec<Gauss>> = spaces
        .iter()
        .map(|w| {
            let lead = w[0][0].clone();
            w.iter().map(|r| r[0].div(&lead)).collect()
        })
        .collect();
    let trivial: Vec<Gauss> = valencies.iter().map(|&k| Gauss::from_i64(k)).collect();
    let pos = chars
        .iter()
        .position(|c| *c == trivial)
        .ok_or_else(|| SchemeError::Eigen("no trivial character".into()))?;
    chars.swap(0, pos);
    chars[1..].sort();
    let p = chars;
    let pinv = inverse(&p).ok_or_else(|| SchemeError::Eigen("P is singular".into()))?;
    let vg = Gauss::from_i64(v);
    let q: Mat<Gauss> = pinv.iter().map(|r| r.iter().map(|x| x.mul(&vg)).collect()).collect();
    let multiplicities = q[0]
        .iter()
        .map(|m| {
            m.is_real()
                .then(|| to_i128(&m.re))
                .flatten()
                .and_then(|x| i64::try_from(x).ok())
                .filter(|&x| x > 0)
                .ok_or_else(|| SchemeError::Eigen(format!("multiplicity {m} is not a positive integer")))
        })
        .collect::<Result<Vec<i64>, _>>()?;
    let em = Eigenmatrices { p, q, multiplicities, valencies };
    check(scheme, &em)?;
    Ok(em)
}

fn algebra_mul(scheme: &Scheme, x: &[Gauss], y: &[Gauss]) -> Vec<Gauss> {
    let d1 = x.len();
    let mut out = vec![Gauss::zero(); d1];
    for i in (0..d1).filter(|&i| !x[i].is_zero()) {
        for j in (0..d1).filter(|&j| !y[j].is_zero()) {
            let xy = x[i].mul(&y[j]);
            for (k, o) in out.iter_mut().enumerate() {
                let p = scheme.intersection(i, j, k);
                if p != 0 {
                    *o = o.add(&xy.mul(&Gauss::from_i64(p)));
                }
            }
        }
    }
    out
}

fn check(scheme: &Scheme, em: &Eigenmatrices) -> Result<(), SchemeError> {
    let d1 = em.p.len();
    let v = Gauss::from_i64(scheme.order() as i64);
    let pq = mat_mul(&em.p, &em.q);
    for (i, row) in pq.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { v.clone() } else { Gauss::zero() };
            if *x != want {
                return Err(SchemeError::Eigen(format!("PQ differs from |X|I at ({i}, {j})")));
            }
        }
    }
    for i in 0..d1 {
        for j in 0..d1 {
            let lhs = Gauss::from_i64(em.multiplicities[j]).mul(&em.p[j][i].conj());
            let rhs = Gauss::from_i64(em.valencies[i]).mul(&em.q[i][j]);
            if lhs != rhs {
                return Err(SchemeError::Eigen(format!("m_{j} conj(P_{j}{i}) differs from k_{i} Q_{i}{j}")));
            }
        }
    }
    let idem: Vec<Vec<Gauss>> =
        (0..d1).map(|j| (0..d1).map(|i| em.q[i][j].div(&v)).collect()).collect();
    for j in 0..d1 {
        for k in 0..d1 {
            let prod = algebra_mul(scheme, &idem[j], &idem[k]);
            let want = if j == k { idem[j].clone() } else { vec![Gauss::zero(); d1] };
            if prod != want {
                return Err(SchemeError::Eigen(format!("E{j} E{k} is wrong")));
            }
        }
        for i in 0..d1 {
            let mut a = vec![Gauss::zero(); d1];
            a[i] = Gauss::one();
            let lhs = algebra_mul(scheme, &a, &idem[j]);
            let rhs: Vec<Gauss> = idem[j].iter().map(|x| x.mul(&em.p[j][i])).collect();
            if lhs != rhs {
                return Err(SchemeError::Eigen(format!("A{i} E{j} differs from P_{j}{i} E{j}")));
            }
        }
    }
    Ok(())
}

/// Integer-valued matrix from a Gaussian matrix, when every entry is a real
/// integer.
pub fn real_integer_matrix(m: &Mat<Gauss>) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    (x.is_real() && x.re.is_integer())
                        .then(|| x.re.to_integer())
                        .and_then(|z: BigInt| z.to_i64())
                })
                .collect()
        })
        .collect()
}
