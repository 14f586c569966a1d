use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The triple `(k, a, b)` of a Segre–Veronese embedding: `k` factors, the
/// i-th of projective dimension `b_i` embedded in degree `a_i`.
///
/// Blocks are sorted by `(a_i, b_i)` at construction (stably), so that
/// `a_1 <= ... <= a_k`; the user's order is kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SVParams {
    original_a: Vec<usize>,
    original_b: Vec<usize>,
    a: Vec<usize>,
    b: Vec<usize>,
    /// `permutation[p]` is the original position of normalized block `p`.
    permutation: Vec<usize>,
}

impl SVParams {
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidParams(format!("a has {} entries but b has {}", a.len(), b.len())));
        }
        if a.iter().chain(&b).any(|&x| x == 0) {
            return Err(Error::InvalidParams("all a_i and b_i must be positive".into()));
        }
        let mut permutation: Vec<usize> = (0..a.len()).collect();
        permutation.sort_by_key(|&i| (a[i], b[i]));
        Ok(SVParams {
            a: permutation.iter().map(|&i| a[i]).collect(),
            b: permutation.iter().map(|&i| b[i]).collect(),
            original_a: a,
            original_b: b,
            permutation,
        })
    }

    /// Convenience constructor that also checks the declared `k`.
    pub fn with_k(k: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.len() != k || b.len() != k {
            return Err(Error::InvalidParams(format!("expected {k} entries in a and b, got {} and {}", a.len(), b.len())));
        }
        Self::new(a, b)
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Normalized degrees (nondecreasing).
    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// Normalized dimensions, aligned with [`SVParams::a`].
    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn original_a(&self) -> &[usize] {
        &self.original_a
    }

    pub fn original_b(&self) -> &[usize] {
        &self.original_b
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Ambient dimension `n = Σ b_i`.
    pub fn n(&self) -> usize {
        self.b.iter().sum()
    }

    /// Largest degree `a_k`, which is also the largest coordinate of any generator.
    pub fn max_a(&self) -> usize {
        *self.a.last().expect("k >= 1")
    }

    /// `k = 1, a = 1`: the semigroup is zero and the model is a point.
    pub fn is_trivial(&self) -> bool {
        self.k() == 1 && self.a[0] == 1
    }

    /// First flat index of each block.
    pub fn offsets(&self) -> Vec<usize> {
        self.b
            .iter()
            .scan(0, |acc, &b| {
                let start = *acc;
                *acc += b;
                Some(start)
            })
            .collect()
    }

    /// Flat position of the 0-based pair `(block, j)`.
    pub fn flat_index(&self, block: usize, j: usize) -> usize {
        assert!(j < self.b[block], "coordinate {j} out of range for block {block}");
        self.b[..block].iter().sum::<usize>() + j
    }

    /// Block of each flat coordinate.
    pub fn block_of_coordinate(&self) -> Vec<usize> {
        self.b.iter().enumerate().flat_map(|(i, &b)| std::iter::repeat_n(i, b)).collect()
    }

    /// The index set as 1-based `(i, j)` pairs in lexicographic order.
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        self.b.iter().enumerate().flat_map(|(i, &b)| (1..=b).map(move |j| (i + 1, j))).collect()
    }

    /// Per-block coordinate sums of a flat vector.
    pub fn block_sums(&self, x: &[i64]) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.k());
        let mut start = 0;
        for &b in &self.b {
            out.push(x[start..start + b].iter().sum());
            start += b;
        }
        out
    }
}

impl fmt::Display for SVParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "k={}, a=({}), b=({})", self.k(), join(&self.a), join(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_stable_and_recorded() {
        let p = SVParams::new(vec![2, 1, 2], vec![3, 1, 1]).unwrap();
        assert_eq!(p.a(), &[1, 2, 2]);
        assert_eq!(p.b(), &[1, 1, 3]);
        assert_eq!(p.permutation(), &[1, 2, 0]);
        assert_eq!(p.original_a(), &[2, 1, 2]);
        assert_eq!(p.n(), 5);
        assert_eq!(p.offsets(), vec![0, 1, 2]);
        assert_eq!(p.index_pairs(), vec![(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)]);
        assert_eq!(p.flat_index(2, 1), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SVParams::new(vec![], vec![]).is_err());
        assert!(SVParams::new(vec![1, 2], vec![1]).is_err());
        assert!(SVParams::new(vec![0], vec![1]).is_err());
        assert!(SVParams::with_k(2, vec![1], vec![1]).is_err());
    }

    #[test]
    fn block_sums_follow_layout() {
        let p = SVParams::new(vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(p.block_sums(&[-1, 2, 3]), vec![-1, 5]);
        assert_eq!(p.block_of_coordinate(), vec![0, 1, 1]);
    }
}
