//! Finite fields GF(p^e) with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of the code
//! are the coefficients of the residue polynomial, lowest degree first. With
//! that encoding `0` is the zero element and `1` the unit for every `q`.
//! The modulus is the lowest monic irreducible polynomial of degree `e`,
//! ordered by the code of its non-leading coefficients.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
}

/// Returns `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: usize,
    e: u32,
    q: usize,
    /// Non-leading coefficients of the modulus, lowest degree first.
    modulus: Vec<usize>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    square: Vec<bool>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let modulus = if e == 1 { Vec::new() } else { lowest_irreducible(p, e as usize) };
        let digits = |x: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(e as usize);
            let mut x = x;
            for _ in 0..e {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = encode(&sum) as u32;
                let prod = poly_mul_mod(&dx, &dy, &modulus, p);
                mul[x * q + y] = encode(&prod) as u32;
            }
        }
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        let mut square = vec![false; q];
        for x in 0..q {
            neg[x] = (0..q).find(|&y| add[x * q + y] == 0).unwrap() as u32;
            if x != 0 {
                inv[x] = (1..q).find(|&y| mul[x * q + y] == 1).unwrap() as u32;
            }
            square[mul[x * q + x] as usize] = true;
        }
        Ok(Self { p, e, q, modulus, add, mul, neg, inv, square })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Non-leading modulus coefficients (empty for prime fields).
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.q + y] as usize
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.q + y] as usize
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: usize) -> Option<usize> {
        (x != 0).then(|| self.inv[x] as usize)
    }

    /// Quadratic character: 0 at zero, 1 on nonzero squares, -1 otherwise.
    pub fn chi(&self, x: usize) -> i64 {
        if x == 0 {
            0
        } else if self.square[x] {
            1
        } else {
            -1
        }
    }
}

fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let e = a.len();
    if e == 1 {
        return vec![(a[0] * b[0]) % p];
    }
    let mut prod = vec![0usize; 2 * e - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^e = -(modulus) reduction, highest degree first.
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (k, &m) in modulus.iter().enumerate() {
            let idx = deg - e + k;
            prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// Lowest monic irreducible polynomial of degree `e` over GF(p), returned as
/// its `e` non-leading coefficients.
fn lowest_irreducible(p: usize, e: usize) -> Vec<usize> {
    let count = p.pow(e as u32);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(e + 1);
        let mut x = code;
        for _ in 0..e {
            coeffs.push(x % p);
            x /= p;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            coeffs.pop();
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 {
        return false;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (k, &c) in g.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}
