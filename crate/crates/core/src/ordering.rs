//! Orderings (vertex to rank bijections) and pairwise comparison functions.

use crate::error::{Error, Result};

/// A bijection from vertices `0..n` to ranks `1..=n`. Orderings are only
/// meaningful up to total reversal; comparisons that care use both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    rank: Vec<usize>,
}

impl Ordering {
    pub fn identity(n: usize) -> Self {
        Self {
            rank: (1..=n).collect(),
        }
    }

    /// From 1-based ranks, `ranks[v]` being the rank of vertex `v`.
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r > n || seen[r - 1] {
                return Err(Error::InvalidParameter(format!(
                    "ranks are not a permutation of 1..={n}"
                )));
            }
            seen[r - 1] = true;
        }
        Ok(Self { rank: ranks })
    }

    /// From a sequence listing the vertices first to last.
    pub fn from_sequence(seq: &[usize]) -> Result<Self> {
        let n = seq.len();
        let mut rank = vec![0; n];
        for (pos, &v) in seq.iter().enumerate() {
            if v >= n || rank[v] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "sequence is not a permutation of 0..{n}"
                )));
            }
            rank[v] = pos + 1;
        }
        Ok(Self { rank })
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertices listed from rank 1 to rank n.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.n()];
        for (v, &r) in self.rank.iter().enumerate() {
            seq[r - 1] = v;
        }
        seq
    }

    pub fn reversed(&self) -> Self {
        let n = self.n();
        Self {
            rank: self.rank.iter().map(|&r| n + 1 - r).collect(),
        }
    }

    /// `true` if `u` comes before `v`.
    #[inline]
    pub fn before(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }
}

/// The order induced by latent positions: rank by value ascending, equal
/// values by index.
pub fn induced_order(latents: &[f64]) -> Ordering {
    let mut seq: Vec<usize> = (0..latents.len()).collect();
    seq.sort_by(|&a, &b| latents[a].total_cmp(&latents[b]).then(a.cmp(&b)));
    Ordering::from_sequence(&seq).expect("sorted indices form a permutation")
}

/// An antisymmetric pairwise order function: `get(u, v) = 1` means `u` comes
/// before `v`, `-1` after, `0` undecided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    n: usize,
    vals: Vec<i8>,
}

impl Comparison {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            vals: vec![0; n * n],
        }
    }

    /// `F_σ(u, v) = 1` iff `σ(u) < σ(v)`.
    pub fn from_ordering(sigma: &Ordering) -> Self {
        let n = sigma.n();
        let mut f = Self::zeros(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    f.vals[u * n + v] = if sigma.before(u, v) { 1 } else { -1 };
                }
            }
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> i8 {
        self.vals[u * self.n + v]
    }

    /// Sets `F(u, v) = value` and `F(v, u) = -value`.
    #[inline]
    pub fn set(&mut self, u: usize, v: usize, value: i8) {
        debug_assert!(u != v && (-1..=1).contains(&value));
        self.vals[u * self.n + v] = value;
        self.vals[v * self.n + u] = -value;
    }

    /// Row `u`: `F(u, ·)`.
    pub fn row(&self, u: usize) -> &[i8] {
        &self.vals[u * self.n..(u + 1) * self.n]
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            vals: self.vals.iter().map(|v| -v).collect(),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|u| {
            self.get(u, u) == 0 && (u + 1..self.n).all(|v| self.get(u, v) == -self.get(v, u))
        })
    }

    pub(crate) fn from_raw(n: usize, vals: Vec<i8>) -> Self {
        debug_assert_eq!(vals.len(), n * n);
        Self { n, vals }
    }
}

/// Orders vertices by `γ_F(i) = Σ_j F(i, j)`, the number of vertices `i`
/// beats minus the number it loses to. The highest score is placed first so
/// that `comparison_to_order(F_σ) = σ`; equal scores go by vertex index.
pub fn comparison_to_order(f: &Comparison) -> Ordering {
    let n = f.n();
    let score: Vec<i64> = (0..n)
        .map(|i| f.row(i).iter().map(|&x| x as i64).sum())
        .collect();
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by(|&a, &b| score[b].cmp(&score[a]).then(a.cmp(&b)));
    Ordering::from_sequence(&seq).expect("sorted indices form a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_order_examples() {
        assert_eq!(induced_order(&[0.3, 0.1, 0.9]).ranks(), &[2, 1, 3]);
        assert_eq!(induced_order(&[0.1, 0.2, 0.3]), Ordering::identity(3));
        assert_eq!(induced_order(&[0.5, 0.2, 0.5]).ranks(), &[2, 1, 3]);
    }

    #[test]
    fn ranks_must_be_a_permutation() {
        assert!(Ordering::from_ranks(vec![1, 1, 2]).is_err());
        assert!(Ordering::from_ranks(vec![0, 1, 2]).is_err());
        assert!(Ordering::from_sequence(&[2, 0, 1]).is_ok());
        assert!(Ordering::from_sequence(&[2, 0, 3]).is_err());
    }

    #[test]
    fn sequence_round_trip() {
        let o = Ordering::from_ranks(vec![3, 1, 2]).unwrap();
        assert_eq!(o.sequence(), vec![1, 2, 0]);
        assert_eq!(Ordering::from_sequence(&o.sequence()).unwrap(), o);
        assert_eq!(o.reversed().ranks(), &[1, 3, 2]);
    }

    #[test]
    fn comparison_to_order_examples() {
        let id = Ordering::identity(5);
        assert_eq!(comparison_to_order(&Comparison::from_ordering(&id)), id);
        assert_eq!(
            comparison_to_order(&Comparison::zeros(4)),
            Ordering::identity(4)
        );

        let mut cyc = Comparison::zeros(3);
        cyc.set(0, 1, 1);
        cyc.set(1, 2, 1);
        cyc.set(2, 0, 1);
        assert_eq!(comparison_to_order(&cyc), Ordering::identity(3));
    }

    #[test]
    fn round_trip_arbitrary_ordering() {
        let o = Ordering::from_ranks(vec![4, 2, 5, 1, 3]).unwrap();
        let f = Comparison::from_ordering(&o);
        assert!(f.is_antisymmetric());
        assert_eq!(comparison_to_order(&f), o);
        assert_eq!(comparison_to_order(&f.negated()), o.reversed());
    }
}
