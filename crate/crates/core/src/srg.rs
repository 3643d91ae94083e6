//! Strongly regular graph parameters.

use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    #[serde(rename = "lambda")]
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    pub fn new(v: i64, k: i64, lambda: i64, mu: i64) -> Self {
        Self { v, k, lambda, mu }
    }

    /// `k(k-λ-1) = (v-k-1)μ`
    pub fn satisfies_identity(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }

    pub fn in_range(&self) -> bool {
        (0..self.v).contains(&self.k)
            && (0..=self.k).contains(&self.lambda)
            && (0..=self.k).contains(&self.mu)
    }

    /// Parameters of the complementary graph.
    pub fn complement(&self) -> Self {
        let Self { v, k, lambda, mu } = *self;
        Self { v, k: v - k - 1, lambda: v - 2 - 2 * k + mu, mu: v - 2 * k + lambda }
    }

    /// Counting identity, ranges, and the same for the complement.
    pub fn is_feasible(&self) -> bool {
        self.satisfies_identity()
            && self.in_range()
            && self.complement().in_range()
            && self.complement().satisfies_identity()
    }

    /// `k = λ + 1` (disjoint cliques) or `k = μ` (complete multipartite).
    pub fn is_imprimitive(&self) -> bool {
        self.k == self.lambda + 1 || self.k == self.mu
    }

    /// Reads the parameters off a 0/1 adjacency matrix, or `None` when the
    /// graph is not strongly regular (or is complete or empty).
    pub fn of_adjacency(a: &IntMatrix) -> Option<Self> {
        if !a.is_square() || !a.is_zero_one() || !a.is_symmetric() || a.trace() != 0 {
            return None;
        }
        let v = a.rows();
        let k = a.row(0).iter().sum::<i64>();
        if a.row_sums().iter().any(|&s| s != k) {
            return None;
        }
        let sq = a * a;
        let (mut lambda, mut mu) = (None, None);
        for i in 0..v {
            for j in 0..v {
                if i == j {
                    continue;
                }
                let slot = if a.get(i, j) == 1 { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(sq.get(i, j)),
                    Some(x) if x != sq.get(i, j) => return None,
                    _ => {}
                }
            }
        }
        Some(Self::new(v as i64, k, lambda?, mu?))
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Adjacency matrix of the graph complement.
pub fn complement_graph(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    IntMatrix::from_fn(n, n, |i, j| if i == j { 0 } else { 1 - a.get(i, j) })
}
