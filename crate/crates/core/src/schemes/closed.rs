//! Closed-form eigenmatrices of the 4-, 5- and 6-class schemes as functions
//! of `(n, ℓ, a)` and `f`, and comparison with computed ones.

use serde::{Deserialize, Serialize};

use crate::field::{int, mat_mul, Field, Gauss, Mat, Rational};
use crate::splittability::SplitParams;

use super::build::{BuiltScheme, SchemeKind, Symmetry};
use super::eigen::Eigenmatrices;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub p: Mat<Gauss>,
    pub q: Mat<Gauss>,
}

fn g(x: Rational) -> Gauss {
    Gauss::real(x)
}

fn lift(rows: Vec<Vec<Rational>>) -> Mat<Gauss> {
    rows.into_iter().map(|r| r.into_iter().map(g).collect()).collect()
}

struct Terms {
    n: Rational,
    l: Rational,
    a: Rational,
    d: Rational,
    /// `ℓ + a(n - 1)`
    s: Rational,
}

impl Terms {
    fn new(p: SplitParams) -> Self {
        let (n, l, a) = (int(p.n), int(p.ell), int(p.a));
        let one = int(1);
        let d = (&n - &one) * &a * &a + int(2) * &l * &a + &l * (&n - &l);
        let s = &l + &a * (&n - &one);
        Self { n, l, a, d, s }
    }

    /// `ℓn(n - ℓ - 1)/D`
    fn k1(&self) -> Rational {
        &self.l * (&self.n - &self.l - int(1)) * &self.n / &self.d
    }

    /// `(ℓ + a(n-1))²/D`
    fn k2(&self) -> Rational {
        &self.s * &self.s / &self.d
    }

    /// `an(n - ℓ - 1)/D`
    fn r1(&self) -> Rational {
        &self.a * &self.n * (&self.n - &self.l - int(1)) / &self.d
    }

    /// `-(ℓ + a(n-1))(n + a - ℓ)/D`
    fn r2(&self) -> Rational {
        -(&self.s * (&self.n + &self.a - &self.l)) / &self.d
    }

    /// `-(a + 1)ℓn/D`
    fn t1(&self) -> Rational {
        -((&self.a + int(1)) * &self.l * &self.n) / &self.d
    }

    /// `-(a - ℓ)(ℓ + a(n-1))/D`
    fn t2(&self) -> Rational {
        -((&self.a - &self.l) * &self.s) / &self.d
    }
}

/// The 4-class eigenmatrices; rows 2 and 3 of `P` carry a negative entry in
/// column 2. The non-symmetric variant multiplies `P_{ij}` by `i` for
/// `i ∈ {2,3}, j ∈ {3,4}` and `Q_{ij}` by `-i` for `i ∈ {3,4}, j ∈ {2,3}`,
/// which keeps `PQ = |X|I`.
pub fn closed_4class(params: SplitParams, symmetry: Symmetry) -> ClosedForm {
    let t = Terms::new(params);
    let (n, l, a) = (&t.n, &t.l, &t.a);
    let one = int(1);
    let two = int(2);
    let half_n = n / &two;
    let p = vec![
        vec![one.clone(), t.k1(), t.k2(), l * n / &two, l * n / &two],
        vec![one.clone(), t.k1(), t.k2(), -half_n.clone(), -half_n.clone()],
        vec![one.clone(), t.r1(), t.r2(), -half_n.clone(), half_n.clone()],
        vec![one.clone(), t.r1(), t.r2(), half_n.clone(), -half_n.clone()],
        vec![one.clone(), t.t1(), t.t2(), int(0), int(0)],
    ];
    let lp1 = l + &one;
    let tri = l * &lp1 / &two;
    let third = l * &lp1 * (l - n - a) / (&two * &t.s);
    let q = vec![
        vec![one.clone(), l.clone(), tri.clone(), tri, &lp1 * (n - l - &one)],
        vec![one.clone(), l.clone(), a * &lp1 / &two, a * &lp1 / &two, -((a + &one) * &lp1)],
        vec![one.clone(), l.clone(), third.clone(), third, (l - a) * &lp1 * (n - l - &one) / &t.s],
        vec![one.clone(), -one.clone(), -(&lp1 / &two), &lp1 / &two, int(0)],
        vec![one.clone(), -one.clone(), &lp1 / &two, -(&lp1 / &two), int(0)],
    ];
    let (mut p, mut q) = (lift(p), lift(q));
    if symmetry == Symmetry::NonSymmetric {
        let i = Gauss::i();
        let minus_i = i.neg();
        for r in 2..4 {
            for c in 3..5 {
                p[r][c] = p[r][c].mul(&i);
            }
        }
        for r in 3..5 {
            for c in 2..4 {
                q[r][c] = q[r][c].mul(&minus_i);
            }
        }
    }
    ClosedForm { p, q }
}

pub fn closed_5class(params: SplitParams, f: usize) -> ClosedForm {
    let t = Terms::new(params);
    let (n, l, a) = (&t.n, &t.l, &t.a);
    let f = int(f as i64);
    let one = int(1);
    let two = int(2);
    let z = int(0);
    let fm1 = &f - &one;
    let p = vec![
        vec![one.clone(), t.k1(), t.k2(), &fm1 * l * n / &two, &fm1 * l * n / &two, (l - &one) * n],
        vec![one.clone(), t.r1(), t.r2(), &fm1 * n / &two, -(&fm1 * n) / &two, z.clone()],
        vec![one.clone(), t.t1(), t.t2(), z.clone(), z.clone(), z.clone()],
        vec![one.clone(), t.k1(), t.k2(), z.clone(), z.clone(), -n.clone()],
        vec![one.clone(), t.r1(), t.r2(), -(n / &two), n / &two, z.clone()],
        vec![one.clone(), t.k1(), t.k2(), -(l * n) / &two, -(l * n) / &two, (l - &one) * n],
    ];
    let l2 = l * l;
    let q = vec![
        vec![one.clone(), l2.clone(), &f * l * (n - l - &one), &f * (l - &one), &fm1 * &l2, fm1.clone()],
        vec![one.clone(), a * l, -((a + &one) * &f * l), &f * (l - &one), a * &fm1 * l, fm1.clone()],
        vec![
            one.clone(),
            &l2 * (l - a - n) / &t.s,
            &f * (a - l) * l * (l - n + &one) / &t.s,
            &f * (l - &one),
            -(&fm1 * &l2 * (a - l + n)) / &t.s,
            fm1.clone(),
        ],
        vec![one.clone(), l.clone(), z.clone(), z.clone(), -l.clone(), -one.clone()],
        vec![one.clone(), -l.clone(), z.clone(), z.clone(), l.clone(), -one.clone()],
        vec![one.clone(), z.clone(), z.clone(), -f.clone(), z.clone(), fm1.clone()],
    ];
    ClosedForm { p: lift(p), q: lift(q) }
}

pub fn closed_6class(params: SplitParams, f: usize) -> ClosedForm {
    let t = Terms::new(params);
    let (n, l, a) = (&t.n, &t.l, &t.a);
    let f = int(f as i64);
    let one = int(1);
    let two = int(2);
    let z = int(0);
    let fm1 = &f - &one;
    let ln = l * n;
    let p = vec![
        vec![one.clone(), t.k1(), t.k2(), &fm1 * &ln / &two, &fm1 * &ln / &two, ln.clone(), &fm1 * n],
        vec![one.clone(), t.k1(), t.k2(), -(&fm1 * n) / &two, -(&fm1 * n) / &two, -n.clone(), &fm1 * n],
        vec![one.clone(), t.r1(), t.r2(), &fm1 * n / &two, -(&fm1 * n) / &two, z.clone(), z.clone()],
        vec![one.clone(), t.t1(), t.t2(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![one.clone(), t.r1(), t.r2(), -(n / &two), n / &two, z.clone(), z.clone()],
        vec![one.clone(), t.k1(), t.k2(), n / &two, n / &two, -n.clone(), -n.clone()],
        vec![one.clone(), t.k1(), t.k2(), -(&ln / &two), -(&ln / &two), ln.clone(), -n.clone()],
    ];
    let lp1 = l + &one;
    let q = vec![
        vec![
            one.clone(),
            l.clone(),
            l * &lp1,
            -(&f * &lp1 * (l - n + &one)),
            &fm1 * l * &lp1,
            &fm1 * l,
            fm1.clone(),
        ],
        vec![one.clone(), l.clone(), a * &lp1, -((a + &one) * &f * &lp1), a * &fm1 * &lp1, &fm1 * l, fm1.clone()],
        vec![
            one.clone(),
            l.clone(),
            l * &lp1 * (l - a - n) / &t.s,
            &f * (a - l) * &lp1 * (l - n + &one) / &t.s,
            -(&fm1 * l * &lp1 * (a - l + n)) / &t.s,
            &fm1 * l,
            fm1.clone(),
        ],
        vec![one.clone(), -one.clone(), lp1.clone(), z.clone(), -lp1.clone(), one.clone(), -one.clone()],
        vec![one.clone(), -one.clone(), -lp1.clone(), z.clone(), lp1.clone(), one.clone(), -one.clone()],
        vec![one.clone(), -one.clone(), z.clone(), z.clone(), z.clone(), &one - &f, fm1.clone()],
        vec![one.clone(), l.clone(), z.clone(), z.clone(), z.clone(), -l.clone(), -one.clone()],
    ];
    ClosedForm { p: lift(p), q: lift(q) }
}

/// Closed form for the kind of scheme that was built.
pub fn closed_form(built: &BuiltScheme) -> ClosedForm {
    match built.kind {
        SchemeKind::FourClass(sym) => closed_4class(built.params, sym),
        SchemeKind::FiveClass => closed_5class(built.params, built.f),
        SchemeKind::SixClass => closed_6class(built.params, built.f),
    }
}

/// Outcome of comparing computed eigenmatrices with a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedMatch {
    /// `perm[j]` is the computed row matching closed-form row `j` of `P`.
    pub perm: Option<Vec<usize>>,
    /// Closed-form `P` rows equal the computed rows as a multiset.
    pub p_rows: bool,
    /// Closed-form `Q` columns equal the computed columns as a multiset.
    pub q_columns: bool,
    /// Closed-form `Q` column `j` equals computed column `perm[j]`.
    pub q_aligned: bool,
    /// The closed-form pair satisfies `PQ = |X|I` as printed.
    pub closed_inverse: bool,
}

impl ClosedMatch {
    pub fn matches(&self) -> bool {
        self.p_rows && self.q_columns
    }
}

fn match_vectors(want: &[Vec<Gauss>], have: &[Vec<Gauss>]) -> Option<Vec<usize>> {
    let mut used = vec![false; have.len()];
    let mut perm = Vec::with_capacity(want.len());
    for w in want {
        let k = (0..have.len()).find(|&k| !used[k] && have[k] == *w)?;
        used[k] = true;
        perm.push(k);
    }
    (want.len() == have.len()).then_some(perm)
}

fn columns(m: &Mat<Gauss>) -> Vec<Vec<Gauss>> {
    crate::field::transpose(m)
}

pub fn match_closed(em: &Eigenmatrices, closed: &ClosedForm, order: usize) -> ClosedMatch {
    let perm = match_vectors(&closed.p, &em.p);
    let q_columns = match_vectors(&columns(&closed.q), &columns(&em.q)).is_some();
    let q_aligned = perm.as_ref().is_some_and(|perm| {
        let (want, have) = (columns(&closed.q), columns(&em.q));
        perm.iter().enumerate().all(|(j, &k)| want[j] == have[k])
    });
    let v = Gauss::from_i64(order as i64);
    let pq = mat_mul(&closed.p, &closed.q);
    let closed_inverse = pq
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { v.clone() } else { Gauss::zero() }));
    ClosedMatch { p_rows: perm.is_some(), perm, q_columns, q_aligned, closed_inverse }
}
