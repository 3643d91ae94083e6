//! The binary Hamming scheme `H(n, 2)` and its two strongly regular fusions.

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::matrix::{sylvester, IntMatrix};
use crate::splittability::diagonalize_by_hadamard;
use crate::srg::SrgParams;

use super::{verify_scheme, Scheme, SchemeError};

/// `A_i^{(n+1)} = A_i^{(n)} ⊗ I₂ + A_{i-1}^{(n)} ⊗ (J₂ - I₂)`, starting from
/// `{I₂, J₂ - I₂}`. The result is verified as a scheme and every class is
/// checked to be diagonalized by the Sylvester matrix of order `2^n`.
pub fn hamming_scheme(n: usize, exec: Exec) -> Result<Scheme, SchemeError> {
    if n == 0 || n > 12 {
        return Err(SchemeError::Precondition(format!("n = {n} must lie in 1..=12")));
    }
    let i2 = IntMatrix::identity(2);
    let a1 = &IntMatrix::ones(2, 2) - &i2;
    let mut classes = vec![i2.clone(), a1.clone()];
    for _ in 1..n {
        let size = classes[0].rows() * 2;
        let mut next = Vec::with_capacity(classes.len() + 1);
        for i in 0..=classes.len() {
            let mut m = IntMatrix::zeros(size, size);
            if i < classes.len() {
                m = &m + &classes[i].kron(&i2);
            }
            if i > 0 {
                m = &m + &classes[i - 1].kron(&a1);
            }
            next.push(m);
        }
        classes = next;
    }
    let h = sylvester(n as u32);
    for (i, a) in classes.iter().enumerate() {
        diagonalize_by_hadamard(a, &h)
            .map_err(|e| SchemeError::Eigen(format!("Sylvester matrix fails to diagonalize A{i}: {e}")))?;
    }
    verify_scheme(classes, exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FusionVariant {
    /// `Λ₁ = {k ≡ 0, 1 (mod 4)}`
    #[serde(rename = "01")]
    V01,
    /// `Λ₁ = {k ≡ 0, 3 (mod 4)}`
    #[serde(rename = "03")]
    V03,
}

impl FusionVariant {
    pub fn in_first_class(self, k: usize) -> bool {
        match self {
            FusionVariant::V01 => k.is_multiple_of(4) || k % 4 == 1,
            FusionVariant::V03 => k.is_multiple_of(4) || k % 4 == 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fusion {
    pub scheme: Scheme,
    pub lambda1: Vec<usize>,
    pub lambda2: Vec<usize>,
    pub srg: SrgParams,
}

/// `(4^m, 2^{m-1}(2^m ± 1), 2^{m-1}(2^{m-1} ± 1), 2^{m-1}(2^{m-1} ± 1))`
/// and their complements.
pub fn fusion_family(m: u32) -> Vec<SrgParams> {
    let v = 1i64 << (2 * m);
    let h = 1i64 << (m - 1);
    let base = [
        SrgParams::new(v, h * ((1 << m) + 1), h * (h + 1), h * (h + 1)),
        SrgParams::new(v, h * ((1 << m) - 1), h * (h - 1), h * (h - 1)),
    ];
    base.iter().flat_map(|p| [*p, p.complement()]).collect()
}

/// Merges the distance classes of `H(n, 2)` along `Λ₁` and its complement,
/// verifies the 2-class scheme and checks that the graph lies in the
/// family for `m = n/2`.
pub fn muzychuk_fusion(n: usize, variant: FusionVariant, exec: Exec) -> Result<Fusion, SchemeError> {
    if n < 2 || n % 2 == 1 {
        return Err(SchemeError::Precondition(format!("n = {n} must be even and at least 2")));
    }
    let h = hamming_scheme(n, exec)?;
    let (lambda1, lambda2): (Vec<usize>, Vec<usize>) = (1..=n).partition(|&k| variant.in_first_class(k));
    let merge = |set: &[usize]| set.iter().fold(IntMatrix::zeros(h.order(), h.order()), |acc, &k| &acc + h.matrix(k));
    let a = merge(&lambda1);
    let scheme = verify_scheme(vec![IntMatrix::identity(h.order()), a.clone(), merge(&lambda2)], exec)?;
    let srg = SrgParams::of_adjacency(&a)
        .ok_or_else(|| SchemeError::Precondition("fused class is not strongly regular".into()))?;
    if !fusion_family((n / 2) as u32).contains(&srg) {
        return Err(SchemeError::Precondition(format!("{srg} lies outside the expected family")));
    }
    Ok(Fusion { scheme, lambda1, lambda2, srg })
}
