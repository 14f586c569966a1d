//! Exact integer linear algebra: Hermite and Smith normal forms, ranks,
//! lattice membership and integer kernels.
//!
//! Everything here is generic over [`Scalar`]; the model code instantiates it
//! with `BigInt` for normal forms and with `i64` for hot-path membership tests
//! on lattices whose bases are known to be small.

// Row and column indices are the natural language of the eliminations below.
#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{extended_gcd, Scalar};

/// An integer point, coordinates in the global lexicographic order of the
/// index set. Serializes as a plain JSON array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector<T = i64>(pub Vec<T>);

impl<T: Scalar> LatticeVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        LatticeVector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        LatticeVector(vec![T::zero(); n])
    }

    /// The unit vector `e_idx` in dimension `n`.
    pub fn unit(n: usize, idx: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[idx] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn dot(&self, other: &[T]) -> T {
        self.0
            .iter()
            .zip(other)
            .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        LatticeVector(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Convert every coordinate to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Option<LatticeVector<U>> {
        self.0.iter().map(|x| x.cast()).collect::<Option<Vec<_>>>().map(LatticeVector)
    }

    /// Divide out the gcd of the entries (the zero vector is returned unchanged).
    pub fn primitive(&self) -> Self {
        let g = self.0.iter().fold(T::zero(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|x| x.clone() / g.clone()).collect())
    }
}

impl<T> Index<usize> for LatticeVector<T> {
    type Output = T;
    fn index(&self, idx: usize) -> &T {
        &self.0[idx]
    }
}

impl<T: Scalar> Add for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn add(self, rhs: Self) -> LatticeVector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in vector addition");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(x, y)| x.clone() + y.clone()).collect())
    }
}

impl<T: Scalar> Sub for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn sub(self, rhs: Self) -> LatticeVector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in vector subtraction");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(x, y)| x.clone() - y.clone()).collect())
    }
}

impl<T: Scalar> Neg for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn neg(self) -> LatticeVector<T> {
        LatticeVector(self.0.iter().map(|x| -x.clone()).collect())
    }
}

impl<T: fmt::Display> fmt::Display for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<T> From<Vec<T>> for LatticeVector<T> {
    fn from(v: Vec<T>) -> Self {
        LatticeVector(v)
    }
}

/// A dense rectangular integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix<T = BigInt> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> IntegerMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![vec![T::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = T::one();
        }
        m
    }

    /// Build from rows; the column count is taken from the first row.
    ///
    /// # Panics
    /// On ragged input. Use [`IntegerMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        Self::try_from_rows(rows).expect("matrix rows must have equal length")
    }

    pub fn try_from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::with_cols(cols, rows)
    }

    /// Build from rows with an explicit column count (needed for zero rows).
    pub fn with_cols(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries: rows })
    }

    pub fn from_vectors(cols: usize, vectors: &[LatticeVector<T>]) -> Result<Self> {
        Self::with_cols(cols, vectors.iter().map(|v| v.0.clone()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &Vec<T>> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.entries[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (l, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] = out.entries[i][j].clone() + a.clone() * other.entries[l][j].clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero())
    }

    pub fn cast<U: Scalar>(&self) -> Option<IntegerMatrix<U>> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.cast()).collect::<Option<Vec<U>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Number of nonzero rows (meaningful for echelon forms).
    pub fn nonzero_rows(&self) -> usize {
        self.entries.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
    }
}

// ---------------------------------------------------------------------------
// Row-style Hermite normal form
// ---------------------------------------------------------------------------

fn combine_rows<T: Scalar>(rows: &mut [Vec<T>], p: usize, r: usize, col: usize) -> (T, T, T, T) {
    let (g, s, t) = extended_gcd(&rows[p][col], &rows[r][col]);
    let pa = rows[p][col].clone() / g.clone();
    let rb = rows[r][col].clone() / g;
    apply_pair(rows, p, r, &s, &t, &rb, &pa);
    (s, t, rb, pa)
}

/// `row_p <- s*row_p + t*row_r`, `row_r <- -rb*row_p + pa*row_r` (determinant one).
fn apply_pair<T: Scalar>(rows: &mut [Vec<T>], p: usize, r: usize, s: &T, t: &T, rb: &T, pa: &T) {
    let len = rows[p].len();
    for j in 0..len {
        let x = rows[p][j].clone();
        let y = rows[r][j].clone();
        rows[p][j] = s.clone() * x.clone() + t.clone() * y.clone();
        rows[r][j] = pa.clone() * y - rb.clone() * x;
    }
}

fn sub_multiple<T: Scalar>(rows: &mut [Vec<T>], target: usize, source: usize, q: &T) {
    if q.is_zero() {
        return;
    }
    for j in 0..rows[target].len() {
        let delta = q.clone() * rows[source][j].clone();
        rows[target][j] = rows[target][j].clone() - delta;
    }
}

fn negate_row<T: Scalar>(rows: &mut [Vec<T>], r: usize) {
    for x in rows[r].iter_mut() {
        *x = -x.clone();
    }
}

/// In-place HNF of `h` (rows over `cols` columns); the same row operations are
/// applied to `u` when given. Returns the rank.
fn hnf_in_place<T: Scalar>(h: &mut [Vec<T>], cols: usize, mut u: Option<&mut [Vec<T>]>) -> usize {
    let nrows = h.len();
    let mut pivot = 0;
    for col in 0..cols {
        if pivot == nrows {
            break;
        }
        for r in pivot + 1..nrows {
            if h[r][col].is_zero() {
                continue;
            }
            if h[pivot][col].is_zero() {
                h.swap(pivot, r);
                if let Some(u) = u.as_deref_mut() {
                    u.swap(pivot, r);
                }
                continue;
            }
            let (s, t, rb, pa) = combine_rows(h, pivot, r, col);
            if let Some(u) = u.as_deref_mut() {
                apply_pair(u, pivot, r, &s, &t, &rb, &pa);
            }
        }
        if h[pivot][col].is_zero() {
            continue;
        }
        if h[pivot][col].is_negative() {
            negate_row(h, pivot);
            if let Some(u) = u.as_deref_mut() {
                negate_row(u, pivot);
            }
        }
        for r in 0..pivot {
            let q = h[r][col].div_floor(&h[pivot][col]);
            sub_multiple(h, r, pivot, &q);
            if let Some(u) = u.as_deref_mut() {
                sub_multiple(u, r, pivot, &q);
            }
        }
        pivot += 1;
    }
    pivot
}

/// Row-style Hermite normal form: returns `(h, u)` with `h = u·m`, `u`
/// unimodular, nonzero rows of `h` on top with positive pivots and reduced
/// entries above each pivot.
pub fn hermite_normal_form<T: Scalar>(m: &IntegerMatrix<T>) -> (IntegerMatrix<T>, IntegerMatrix<T>) {
    let mut h = m.entries.clone();
    let mut u = IntegerMatrix::<T>::identity(m.rows).entries;
    hnf_in_place(&mut h, m.cols, Some(&mut u));
    (
        IntegerMatrix { rows: m.rows, cols: m.cols, entries: h },
        IntegerMatrix { rows: m.rows, cols: m.rows, entries: u },
    )
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Smith invariants `d_1 | d_2 | ...` (length `min(rows, cols)`, zeros last).
pub fn smith_normal_form<T: Scalar>(m: &IntegerMatrix<T>) -> Vec<T> {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let size = r.min(c);
    for t in 0..size {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_multiple(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..r {
                    let delta = q.clone() * a[i][t].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = min_abs_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in 0..c {
                        let v = a[i][j].clone();
                        a[t][j] = a[t][j].clone() + v;
                    }
                }
                None => break,
            }
        }
    }
    (0..size).map(|i| a[i][i].abs()).collect()
}

fn min_abs_entry<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross<T: Scalar>(a: &[Vec<T>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &a[i][j];
        let cur = &a[best.0][best.1];
        if !x.is_zero() && (cur.is_zero() || x.abs() < cur.abs()) {
            *best = (i, j);
        }
    };
    for i in t..a.len() {
        consider(i, t, &mut best);
    }
    for j in t..a[t].len() {
        consider(t, j, &mut best);
    }
    best
}

// ---------------------------------------------------------------------------
// Sublattices
// ---------------------------------------------------------------------------

/// A sublattice of `Z^n` in canonical Hermite form: equal lattices have
/// identical representations, so `==` is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sublattice<T = BigInt> {
    ambient: usize,
    basis: Vec<LatticeVector<T>>,
}

impl<T: Scalar> Sublattice<T> {
    /// The rank-0 lattice `{0}` in `Z^n`.
    pub fn zero(n: usize) -> Self {
        Sublattice { ambient: n, basis: Vec::new() }
    }

    /// The whole of `Z^n`.
    pub fn full(n: usize) -> Self {
        Sublattice { ambient: n, basis: (0..n).map(|i| LatticeVector::unit(n, i)).collect() }
    }

    /// Lattice generated by the given vectors (of dimension `n`).
    pub fn from_generators(n: usize, gens: &[LatticeVector<T>]) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        // Feed generators in chunks so the working matrix stays small even
        // for thousands of generators.
        let mut basis: Vec<Vec<T>> = Vec::new();
        for chunk in gens.chunks(64) {
            basis.extend(chunk.iter().map(|g| g.0.clone()));
            let rank = hnf_in_place(&mut basis, n, None);
            basis.truncate(rank);
        }
        Ok(Sublattice { ambient: n, basis: basis.into_iter().map(LatticeVector).collect() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticeVector<T>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntegerMatrix<T> {
        IntegerMatrix { rows: self.basis.len(), cols: self.ambient, entries: self.basis.iter().map(|b| b.0.clone()).collect() }
    }

    /// Integer coordinates of `v` with respect to the Hermite basis, or
    /// `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut start = 0;
        for b in &self.basis {
            let p = b.0.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
            if rest[start..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&b.0[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in p..self.ambient {
                    rest[j] = rest[j].clone() - q.clone() * b.0[j].clone();
                }
            }
            coords.push(q);
            start = p + 1;
        }
        rest[start..].iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(&b.0))
    }

    /// `{v in Z^n : v·b = 0 for all b in the lattice}`.
    pub fn orthogonal_complement(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        integer_kernel(&self.basis_matrix())
    }

    /// The saturation `span_Q(L) ∩ Z^n`.
    pub fn saturation(&self) -> Self {
        let perp = self.orthogonal_complement();
        if perp.rank() == 0 {
            return Self::full(self.ambient);
        }
        integer_kernel(&perp.basis_matrix())
    }

    pub fn cast<U: Scalar>(&self) -> Option<Sublattice<U>> {
        let basis = self.basis.iter().map(|b| b.cast()).collect::<Option<Vec<_>>>()?;
        Some(Sublattice { ambient: self.ambient, basis })
    }
}

/// Lattice generated by `gens`; an empty list gives the rank-0 lattice.
pub fn lattice_from_generators<T: Scalar>(n: usize, gens: &[LatticeVector<T>]) -> Result<Sublattice<T>> {
    Sublattice::from_generators(n, gens)
}

/// Exact membership by triangular solve against the Hermite basis.
pub fn lattice_member<T: Scalar>(l: &Sublattice<T>, v: &LatticeVector<T>) -> Result<bool> {
    if v.dim() != l.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: l.ambient_dim(), found: v.dim() });
    }
    Ok(l.contains(&v.0))
}

/// The full lattice `{v : m·v = 0}` in Hermite form.
pub fn integer_kernel<T: Scalar>(m: &IntegerMatrix<T>) -> Sublattice<T> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = h.nonzero_rows();
    let kernel: Vec<LatticeVector<T>> = u.entries[rank..].iter().cloned().map(LatticeVector).collect();
    Sublattice::from_generators(m.cols, &kernel).expect("kernel vectors have the column dimension")
}

// ---------------------------------------------------------------------------
// Rank over the rationals
// ---------------------------------------------------------------------------

/// Fraction-free (Bareiss) elimination with checked arithmetic; `None` on
/// overflow of the scalar type.
pub fn checked_rank<T: Scalar>(m: &IntegerMatrix<T>) -> Option<usize> {
    let mut a = m.entries.clone();
    let (r, c) = (m.rows, m.cols);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..c {
        if rank == r {
            break;
        }
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..r {
            let lead = a[i][col].clone();
            for j in col + 1..c {
                let x = a[i][j].checked_mul(&pivot)?;
                let y = lead.checked_mul(&a[rank][j])?;
                a[i][j] = x.checked_sub(&y)? / prev.clone();
            }
            a[i][col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Rank over `Q`; falls back to arbitrary precision when `T` overflows.
pub fn rank<T: Scalar>(m: &IntegerMatrix<T>) -> usize {
    checked_rank(m).unwrap_or_else(|| {
        let big: IntegerMatrix<BigInt> = IntegerMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|row| row.iter().map(to_big).collect()).collect(),
        };
        checked_rank(&big).expect("arbitrary precision never overflows")
    })
}

fn to_big<T: Scalar>(x: &T) -> BigInt {
    x.cast().unwrap_or_else(|| BigInt::parse_bytes(x.to_string().as_bytes(), 10).expect("decimal integer"))
}
