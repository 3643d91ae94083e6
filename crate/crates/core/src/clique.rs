//! Maximum clique by branch and bound over bitsets.
//!
//! Vertices are renumbered in degeneracy order; the bound at each node is a
//! greedy colouring of the candidate set.

#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, adj: vec![0; n * words] }
    }

    pub fn from_adjacency(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.adj[i * self.words + j / 64] |= 1 << (j % 64);
        self.adj[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Vertices ordered by repeatedly removing a minimum-degree vertex,
    /// reversed so the densest core comes first.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = (0..self.n).map(|i| self.degree(i)).collect();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
            removed[v] = true;
            order.push(v);
            for u in 0..self.n {
                if !removed[u] && self.has_edge(u, v) {
                    deg[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    fn relabel(&self, order: &[usize]) -> Self {
        BitGraph::from_adjacency(self.n, |i, j| self.has_edge(order[i], order[j]))
    }
}

/// A maximum clique, as vertex indices of `g` in increasing order.
pub fn max_clique(g: &BitGraph) -> Vec<usize> {
    let order = g.degeneracy_order();
    let h = g.relabel(&order);
    let mut cand = vec![0u64; h.words];
    for v in 0..h.n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(&h, &mut current, cand, &mut best);
    let mut out: Vec<usize> = best.into_iter().map(|v| order[v]).collect();
    out.sort_unstable();
    out
}

pub fn max_clique_size(g: &BitGraph) -> usize {
    max_clique(g).len()
}

fn expand(g: &BitGraph, current: &mut Vec<usize>, cand: Vec<u64>, best: &mut Vec<usize>) {
    let (verts, colors) = color_sort(g, &cand);
    let mut cand = cand;
    for idx in (0..verts.len()).rev() {
        if current.len() + colors[idx] <= best.len() {
            return;
        }
        let v = verts[idx];
        current.push(v);
        let next: Vec<u64> = cand.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        if next.iter().all(|&w| w == 0) {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, current, next, best);
        }
        current.pop();
        cand[v / 64] &= !(1 << (v % 64));
    }
}

/// Greedy colouring of the candidate set; returns vertices in colour order
/// with the running colour count as the bound.
fn color_sort(g: &BitGraph, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = cand.to_vec();
    let mut verts = Vec::new();
    let mut colors = Vec::new();
    let mut color = 0;
    while uncolored.iter().any(|&w| w != 0) {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = first_bit(&avail) {
            avail[v / 64] &= !(1 << (v % 64));
            uncolored[v / 64] &= !(1 << (v % 64));
            for (a, b) in avail.iter_mut().zip(g.row(v)) {
                *a &= !b;
            }
            verts.push(v);
            colors.push(color);
        }
    }
    (verts, colors)
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}
