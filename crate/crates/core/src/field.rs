//! Exact fields (rationals and Gaussian rationals) and dense linear algebra
//! over them: reduced row echelon form, nullspaces and inverses.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Minimal exact-field interface used by the generic routines below.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Zero::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self { re: int(re), im: int(im) }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

impl Ord for Gauss {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for Gauss {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Field for Gauss {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn div(&self, o: &Self) -> Self {
        let norm = &o.re * &o.re + &o.im * &o.im;
        assert!(!Zero::is_zero(&norm), "division by zero");
        let num = self.mul(&o.conj());
        Self { re: num.re / &norm, im: num.im / norm }
    }
    fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
}

/// Exact rational serialized as numerator/denominator, with an optional
/// imaginary numerator over the same denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactNumber {
    pub num: String,
    pub den: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub imag_num: Option<String>,
}

impl From<&Gauss> for ExactNumber {
    fn from(g: &Gauss) -> Self {
        if g.is_real() {
            return Self {
                num: g.re.numer().to_string(),
                den: g.re.denom().to_string(),
                imag_num: None,
            };
        }
        let den = num_integer::Integer::lcm(g.re.denom(), g.im.denom());
        let re = g.re.numer() * (&den / g.re.denom());
        let im = g.im.numer() * (&den / g.im.denom());
        Self { num: re.to_string(), den: den.to_string(), imag_num: Some(im.to_string()) }
    }
}

impl TryFrom<&ExactNumber> for Gauss {
    type Error = String;
    fn try_from(e: &ExactNumber) -> Result<Self, String> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|err| format!("{s:?}: {err}"));
        let den = parse(&e.den)?;
        if Zero::is_zero(&den) {
            return Err("zero denominator".into());
        }
        let re = BigRational::new(parse(&e.num)?, den.clone());
        let im = match &e.imag_num {
            Some(s) => BigRational::new(parse(s)?, den),
            None => Zero::zero(),
        };
        Ok(Gauss::new(re, im))
    }
}

pub type Mat<F> = Vec<Vec<F>>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one().div(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Nullspace of `m` from its reduced form.
#[derive(Clone, Debug)]
pub struct Nullspace<F> {
    /// Reduced rows, one per pivot.
    pub reduced: Mat<F>,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    /// One basis vector per free column: 1 there, 0 on the other free columns.
    pub basis: Mat<F>,
}

pub fn nullspace<F: Field>(m: &Mat<F>) -> Nullspace<F> {
    let cols = m.first().map_or(0, Vec::len);
    let mut reduced = m.clone();
    let pivots = rref(&mut reduced);
    reduced.truncate(pivots.len());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = row[f].neg();
            }
            v
        })
        .collect();
    Nullspace { reduced, pivots, free, basis }
}

pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "shape mismatch");
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(F::zero(), |acc, (x, brow)| acc.add(&x.mul(&brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn transpose<F: Field>(m: &Mat<F>) -> Mat<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<F: Field>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.len();
    let mut aug: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn to_field<F: Field>(m: &crate::matrix::IntMatrix) -> Mat<F> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| F::from_i64(x)).collect()).collect()
}

pub fn abs_rational(x: &Rational) -> Rational {
    x.abs()
}
