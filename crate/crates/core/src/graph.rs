//! Dense undirected graphs stored as bit-set adjacency rows, plus the derived
//! objects the estimators consume: common-neighbor counts, the threshold-square
//! graph, induced subgraphs and neighborhood differences.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Fixed-width bit set over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_members(len: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for m in members {
            s.insert(m);
        }
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `|self ∩ other|`.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Simple undirected graph on `0..n`: symmetric, irreflexive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            rows: (0..n).map(|_| BitSet::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |i, j| j == i + 1)
    }

    /// Builds a graph from a predicate evaluated once for each pair `i < j`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.link(i, j);
                }
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(rows: Vec<BitSet>) -> Self {
        let n = rows.len();
        debug_assert!(rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == n && !r.contains(i)));
        Self { n, rows }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Open neighborhood `N(u)`.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, r)| r.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// `|N(u) ∩ N(v)|` for every pair, by row-parallel popcounts.
    pub fn common_neighbors(&self) -> CommonNeighborMatrix {
        let n = self.n;
        let mut counts = vec![0u32; n * n];
        counts
            .par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(i, row)| {
                for (j, c) in row.iter_mut().enumerate() {
                    *c = self.rows[i].intersection_count(&self.rows[j]) as u32;
                }
            });
        CommonNeighborMatrix { n, counts }
    }

    /// The threshold-square graph: `u ~ v` iff `|N(u) ∩ N(v)| > alpha (n - 2)`.
    pub fn threshold_square(&self, alpha: f64) -> Result<Graph> {
        if self.n < 3 {
            return Err(Error::TooSmall {
                need: 3,
                got: self.n,
            });
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} must lie in (0, 1)"
            )));
        }
        Ok(self.common_neighbors().threshold(alpha))
    }

    /// Subgraph induced on `vertices` (distinct, in the given order). Vertex `k`
    /// of the result is `vertices[k]` of `self`; the returned map records this.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut seen = BitSet::new(self.n);
        for &v in vertices {
            if v >= self.n || seen.contains(v) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} is out of range or repeated"
                )));
            }
            seen.insert(v);
        }
        let k = vertices.len();
        let rows = vertices
            .iter()
            .map(|&u| {
                let mut r = BitSet::new(k);
                for (b, &v) in vertices.iter().enumerate() {
                    if self.has_edge(u, v) {
                        r.insert(b);
                    }
                }
                r
            })
            .collect();
        Ok((Graph::from_rows(rows), vertices.to_vec()))
    }

    /// True iff the graph has exactly one connected component.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = BitSet::new(self.n);
        let mut queue = VecDeque::from([0]);
        seen.insert(0);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.rows[u].iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    /// `(N(u) \ N(v) \ {v}, N(v) \ N(u) \ {u})`.
    pub fn neighborhood_difference(&self, u: usize, v: usize) -> (BitSet, BitSet) {
        let mut a = self.rows[u].clone();
        a.difference_with(&self.rows[v]);
        a.remove(v);
        let mut b = self.rows[v].clone();
        b.difference_with(&self.rows[u]);
        b.remove(u);
        (a, b)
    }
}

/// Symmetric matrix of common-neighbor counts; the diagonal holds degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonNeighborMatrix {
    n: usize,
    counts: Vec<u32>,
}

impl CommonNeighborMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.counts[i * self.n..(i + 1) * self.n]
    }

    /// Graph with `u ~ v` iff `count(u, v) > alpha (n - 2)` (strict).
    pub fn threshold(&self, alpha: f64) -> Graph {
        let n = self.n;
        let cut = alpha * n.saturating_sub(2) as f64;
        let rows = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut r = BitSet::new(n);
                for (j, &c) in self.row(i).iter().enumerate() {
                    if j != i && c as f64 > cut {
                        r.insert(j);
                    }
                }
                r
            })
            .collect();
        Graph::from_rows(rows)
    }
}
