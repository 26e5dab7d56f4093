//! Matrices over GF(q), the evaluation domain of symmetric matrices, minors
//! and doset pairs.
//!
//! Indices are 0-based internally and 1-based in every textual form.
//!
//! The canonical index of a symmetric matrix reads the upper-triangle entries
//! in row-major order as base-q digits, least significant first, so entry
//! (1,1) is the lowest digit. General matrices use the same rule over all
//! ℓ² entries.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::GaloisField;

/// Default limit on elementary work for enumerations and exhaustive searches.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

/// Read access shared by symmetric and general square matrices.
pub trait SquareEntries {
    fn size(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> u32;
}

fn det_in_place(n: usize, a: &mut [u32], f: &GaloisField) -> u32 {
    let mut det = 1u32;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            det = f.neg(det);
        }
        let pv = a[col * n + col];
        det = f.mul(det, pv);
        let pinv = f.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = f.mul(a[r * n + col], pinv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let v = f.mul(factor, a[col * n + c]);
                a[r * n + c] = f.sub(a[r * n + c], v);
            }
        }
    }
    det
}

/// Square ℓ×ℓ matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    n: usize,
    data: Vec<u32>,
}

impl SquareEntries for Matrix {
    fn size(&self) -> usize {
        self.n
    }
    fn entry(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: u32) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected {n} columns in every row")));
        }
        Ok(Matrix { n, data: rows.concat() })
    }

    /// `I + λ E_{a,b}` (0-based, `a != b`).
    pub fn elementary(n: usize, a: usize, b: usize, lambda: u32) -> Self {
        let mut m = Self::identity(n);
        m.data[a * n + b] = lambda;
        m
    }

    /// Permutation matrix with `P[perm[a]][a] = 1`, so `(P^T X P)[a][b] = X[perm[a]][perm[b]]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::ShapeMismatch("not a permutation".into()));
            }
        }
        let mut m = Self::zero(n);
        for (a, &p) in perm.iter().enumerate() {
            m.data[p * n + a] = 1;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: &GaloisField) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.n, self.n, other.n, other.n)));
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(a, other.data[k * n + j]);
                    out.data[i * n + j] = f.add(out.data[i * n + j], v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix, f: &GaloisField) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch("matrix sizes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn det(&self, f: &GaloisField) -> u32 {
        let mut a = self.data.clone();
        det_in_place(self.n, &mut a, f)
    }

    pub fn inverse(&self, f: &GaloisField) -> Result<Matrix> {
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(&self.data[i * n..(i + 1) * n]);
            a[i * w + n + i] = 1;
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * w + col] != 0).ok_or(Error::SingularMatrix)?;
            for c in 0..w {
                a.swap(pivot * w + c, col * w + c);
            }
            let pinv = f.inv(a[col * w + col])?;
            for c in 0..w {
                a[col * w + c] = f.mul(a[col * w + c], pinv);
            }
            for r in 0..n {
                let factor = a[r * w + col];
                if r == col || factor == 0 {
                    continue;
                }
                for c in 0..w {
                    let v = f.mul(factor, a[col * w + c]);
                    a[r * w + c] = f.sub(a[r * w + c], v);
                }
            }
        }
        let mut inv = Self::zero(n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&a[i * w + n..(i + 1) * w]);
        }
        Ok(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn index(&self, q: u32) -> u64 {
        self.data.iter().rev().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
    }

    pub fn from_index(n: usize, q: u32, mut idx: u64) -> Self {
        let mut m = Self::zero(n);
        for d in m.data.iter_mut() {
            *d = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        m
    }
}

/// Symmetric ℓ×ℓ matrix stored as its upper triangle in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymMatrix {
    ell: usize,
    upper: Vec<u32>,
}

pub fn triangle_len(ell: usize) -> usize {
    ell * (ell + 1) / 2
}

/// Position of (i,j) in the upper triangle; row i starts at `i*ell - i(i-1)/2`.
#[inline]
fn tri(ell: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * ell - i * i.saturating_sub(1) / 2 + (j - i)
}

impl SquareEntries for SymMatrix {
    fn size(&self) -> usize {
        self.ell
    }
    fn entry(&self, i: usize, j: usize) -> u32 {
        self.upper[tri(self.ell, i, j)]
    }
}

impl SymMatrix {
    pub fn zero(ell: usize) -> Self {
        SymMatrix { ell, upper: vec![0; triangle_len(ell)] }
    }

    pub fn identity(ell: usize) -> Self {
        let mut s = Self::zero(ell);
        for i in 0..ell {
            s.set(i, i, 1);
        }
        s
    }

    pub fn from_upper(ell: usize, upper: Vec<u32>) -> Result<Self> {
        if upper.len() != triangle_len(ell) {
            return Err(Error::ShapeMismatch(format!(
                "upper triangle of a {ell}x{ell} matrix has {} entries, got {}",
                triangle_len(ell),
                upper.len()
            )));
        }
        Ok(SymMatrix { ell, upper })
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::ShapeMismatch("matrix is not symmetric".into()));
        }
        let n = m.size();
        let mut s = Self::zero(n);
        for i in 0..n {
            for j in i..n {
                s.set(i, j, m.get(i, j));
            }
        }
        Ok(s)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn upper(&self) -> &[u32] {
        &self.upper
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entry(i, j)
    }

    /// Sets entries (i,j) and (j,i).
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        let t = tri(self.ell, i, j);
        self.upper[t] = v;
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.ell;
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    pub fn index(&self, q: u32) -> u64 {
        self.upper.iter().rev().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
    }

    pub fn from_index(ell: usize, q: u32, mut idx: u64) -> Self {
        let mut s = Self::zero(ell);
        for d in s.upper.iter_mut() {
            *d = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        s
    }

    pub fn add(&self, other: &SymMatrix, f: &GaloisField) -> Result<SymMatrix> {
        if self.ell != other.ell {
            return Err(Error::ShapeMismatch("matrix sizes differ".into()));
        }
        let upper = self.upper.iter().zip(&other.upper).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(SymMatrix { ell: self.ell, upper })
    }

    pub fn scale(&self, c: u32, f: &GaloisField) -> SymMatrix {
        let upper = self.upper.iter().map(|&a| f.mul(c, a)).collect();
        SymMatrix { ell: self.ell, upper }
    }

    /// `Aᵀ X A + S`, which is again symmetric.
    pub fn congruence(&self, a: &Matrix, s: &SymMatrix, f: &GaloisField) -> Result<SymMatrix> {
        let n = self.ell;
        if a.size() != n || s.ell != n {
            return Err(Error::ShapeMismatch("congruence operands differ in size".into()));
        }
        // (XA)[k][j]
        let mut xa = vec![0u32; n * n];
        for k in 0..n {
            for m in 0..n {
                let x = self.get(k, m);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(x, a.get(m, j));
                    xa[k * n + j] = f.add(xa[k * n + j], v);
                }
            }
        }
        let mut out = s.clone();
        for i in 0..n {
            for j in i..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc = f.add(acc, f.mul(a.get(k, i), xa[k * n + j]));
                }
                let t = tri(n, i, j);
                out.upper[t] = f.add(out.upper[t], acc);
            }
        }
        Ok(out)
    }
}

/// The evaluation domain S^ℓ(F_q) in canonical-index order.
#[derive(Clone, Debug)]
pub struct SymmetricSpace {
    ell: usize,
    q: u32,
    n: u64,
}

impl SymmetricSpace {
    pub fn new(ell: usize, q: u32, budget: u128) -> Result<Self> {
        let required = (q as u128).checked_pow(triangle_len(ell) as u32).unwrap_or(u128::MAX);
        if required > budget || required > u64::MAX as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        Ok(SymmetricSpace { ell, q, n: required as u64 })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn point(&self, idx: u64) -> SymMatrix {
        SymMatrix::from_index(self.ell, self.q, idx)
    }

    pub fn iter(&self) -> SymIter {
        SymIter { q: self.q, next: Some(SymMatrix::zero(self.ell)) }
    }
}

/// Odometer over upper-triangle entries, lowest digit first.
pub struct SymIter {
    q: u32,
    next: Option<SymMatrix>,
}

impl Iterator for SymIter {
    type Item = SymMatrix;

    fn next(&mut self) -> Option<SymMatrix> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for d in succ.upper.iter_mut() {
            *d += 1;
            if *d < self.q {
                carried = false;
                break;
            }
            *d = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All symmetric ℓ×ℓ matrices over `f` in canonical-index order.
pub fn enumerate_symmetric(ell: usize, f: &GaloisField, budget: u128) -> Result<SymIter> {
    Ok(SymmetricSpace::new(ell, f.order(), budget)?.iter())
}

/// Row and column index sets of a minor, both strictly increasing and of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorPair {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl MinorPair {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch(format!("{} rows but {} columns", rows.len(), cols.len())));
        }
        if !strictly_increasing(&rows) || !strictly_increasing(&cols) {
            return Err(Error::ShapeMismatch("index sets must be strictly increasing".into()));
        }
        Ok(MinorPair { rows, cols })
    }

    /// Like [`MinorPair::new`] but also enforces the doset condition.
    pub fn doset(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let p = Self::new(rows, cols)?;
        if !p.is_doset() {
            return Err(Error::NotDoset { rows: p.rows_one_based(), cols: p.cols_one_based() });
        }
        Ok(p)
    }

    /// Builds a pair from 1-based index lists.
    pub fn one_based(rows: &[usize], cols: &[usize]) -> Result<Self> {
        let conv = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter().map(|&x| x.checked_sub(1).ok_or(Error::IndexOutOfRange { index: 0, size: 0 })).collect()
        };
        Self::new(conv(rows)?, conv(cols)?)
    }

    pub fn empty() -> Self {
        MinorPair { rows: Vec::new(), cols: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_doset(&self) -> bool {
        self.rows.iter().zip(&self.cols).all(|(i, j)| i <= j)
    }

    /// `I ∪ J`, sorted.
    pub fn spread(&self) -> Vec<usize> {
        self.rows.iter().chain(&self.cols).copied().sorted().dedup().collect()
    }

    /// The same minor with rows and columns exchanged.
    pub fn transposed(&self) -> Self {
        MinorPair { rows: self.cols.clone(), cols: self.rows.clone() }
    }

    /// Representative of this minor as a function on symmetric matrices.
    pub fn doset_representative(&self) -> Self {
        if self.is_doset() {
            self.clone()
        } else {
            self.transposed()
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.rows.iter().chain(&self.cols).copied().max()
    }

    pub fn rows_one_based(&self) -> Vec<usize> {
        self.rows.iter().map(|x| x + 1).collect()
    }

    pub fn cols_one_based(&self) -> Vec<usize> {
        self.cols.iter().map(|x| x + 1).collect()
    }

    /// Whether `other` is a minor of this one (rows and columns both contained).
    pub fn contains(&self, other: &MinorPair) -> bool {
        other.rows.iter().all(|r| self.rows.contains(r)) && other.cols.iter().all(|c| self.cols.contains(c))
    }

    pub fn value<M: SquareEntries>(&self, m: &M, f: &GaloisField) -> Result<u32> {
        minor_value(m, &self.rows, &self.cols, f)
    }
}

impl Ord for MinorPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.rows.cmp(&other.rows)).then_with(|| self.cols.cmp(&other.cols))
    }
}

impl PartialOrd for MinorPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated 1-based indices, or `-` for the empty set.
pub fn format_index_set(v: &[usize]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter().map(|x| (x + 1).to_string()).join(",")
    }
}

/// Inverse of [`format_index_set`], returning 0-based indices.
pub fn parse_index_set(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("bad index '{t}'")),
            Ok(x) => Ok(x - 1),
        })
        .collect()
}

impl fmt::Display for MinorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", format_index_set(&self.rows), format_index_set(&self.cols))
    }
}

/// Determinant of the submatrix on `rows × cols`; the empty minor is 1.
pub fn minor_value<M: SquareEntries>(m: &M, rows: &[usize], cols: &[usize], f: &GaloisField) -> Result<u32> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(format!("{} rows but {} columns", rows.len(), cols.len())));
    }
    let size = m.size();
    if let Some(&bad) = rows.iter().chain(cols).find(|&&x| x >= size) {
        return Err(Error::IndexOutOfRange { index: bad + 1, size });
    }
    let t = rows.len();
    match t {
        0 => Ok(1),
        1 => Ok(m.entry(rows[0], cols[0])),
        2 => {
            let a = f.mul(m.entry(rows[0], cols[0]), m.entry(rows[1], cols[1]));
            let b = f.mul(m.entry(rows[0], cols[1]), m.entry(rows[1], cols[0]));
            Ok(f.sub(a, b))
        }
        _ => {
            let mut sub = Vec::with_capacity(t * t);
            for &r in rows {
                for &c in cols {
                    sub.push(m.entry(r, c));
                }
            }
            Ok(det_in_place(t, &mut sub, f))
        }
    }
}

/// Doset pairs for sizes `0..=ell`, ordered by size, then rows, then columns.
pub fn doset_pairs(ell: usize) -> Vec<MinorPair> {
    all_minor_pairs(ell).into_iter().filter(MinorPair::is_doset).collect()
}

/// Every `(I, J)` with `|I| = |J|`, in the same order as [`doset_pairs`].
pub fn all_minor_pairs(ell: usize) -> Vec<MinorPair> {
    let mut out = Vec::new();
    for t in 0..=ell {
        let subsets: Vec<Vec<usize>> = (0..ell).combinations(t).collect();
        for rows in &subsets {
            for cols in &subsets {
                out.push(MinorPair { rows: rows.clone(), cols: cols.clone() });
            }
        }
    }
    out
}

/// Closed-form count of invertible symmetric ℓ×ℓ matrices over GF(q).
pub fn fullrank_formula(ell: usize, q: u32) -> u128 {
    let q = q as u128;
    let half = ell.div_ceil(2) as u32;
    let mut num = q.pow(triangle_len(ell) as u32);
    let mut den_exp = 0u32;
    for i in 1..=half {
        num *= q.pow(2 * i - 1) - 1;
        den_exp += 2 * i - 1;
    }
    num / q.pow(den_exp)
}

/// Returns `(enumerated, formula)` counts of invertible symmetric matrices.
pub fn count_fullrank_symmetric(ell: usize, f: &GaloisField, budget: u128) -> Result<(u128, u128)> {
    let enumerated = enumerate_symmetric(ell, f, budget)?.filter(|s| s.to_matrix().det(f) != 0).count() as u128;
    Ok((enumerated, fullrank_formula(ell, f.order())))
}

/// Evaluates `B(x, y) = Σ_{i≤ℓ} x_i y_{2ℓ+1-i} − Σ_{i>ℓ} x_i y_{2ℓ+1-i}`.
pub fn symplectic_form(x: &[u32], y: &[u32], f: &GaloisField) -> u32 {
    let w = x.len();
    let ell = w / 2;
    let mut acc = 0u32;
    for i in 0..w {
        let term = f.mul(x[i], y[w - 1 - i]);
        acc = if i < ell { f.add(acc, term) } else { f.sub(acc, term) };
    }
    acc
}

/// Whether the row space of `[M | J]` is totally isotropic, `J` the antidiagonal 0/1 matrix.
pub fn isotropic_embed_check(m: &Matrix, f: &GaloisField) -> bool {
    let ell = m.size();
    let rows: Vec<Vec<u32>> = (0..ell)
        .map(|a| {
            let mut r: Vec<u32> = (0..ell).map(|j| m.get(a, j)).collect();
            r.extend((0..ell).map(|j| u32::from(j == ell - 1 - a)));
            r
        })
        .collect();
    rows.iter().all(|x| rows.iter().all(|y| symplectic_form(x, y, f) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{catalan, narayana};

    fn gf(q: u64) -> GaloisField {
        GaloisField::from_order(q).unwrap()
    }

    #[test]
    fn triangle_layout() {
        let ell = 3;
        let mut seen = Vec::new();
        for i in 0..ell {
            for j in i..ell {
                seen.push(tri(ell, i, j));
                assert_eq!(tri(ell, i, j), tri(ell, j, i));
            }
        }
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_symmetric(2, &gf(2), DEFAULT_BUDGET).unwrap().count(), 8);
        assert_eq!(enumerate_symmetric(1, &gf(3), DEFAULT_BUDGET).unwrap().count(), 3);
        assert_eq!(enumerate_symmetric(3, &gf(2), DEFAULT_BUDGET).unwrap().count(), 64);
        assert!(matches!(enumerate_symmetric(3, &gf(2), 63), Err(Error::BudgetExceeded { required: 64, budget: 63 })));
    }

    #[test]
    fn enumeration_follows_canonical_index() {
        let f = gf(3);
        for (i, s) in enumerate_symmetric(2, &f, DEFAULT_BUDGET).unwrap().enumerate() {
            assert_eq!(s.index(3), i as u64);
            assert_eq!(SymMatrix::from_index(2, 3, i as u64), s);
        }
        // Entry (1,1) is the lowest digit.
        assert_eq!(SymMatrix::from_index(2, 3, 1).get(0, 0), 1);
        assert_eq!(SymMatrix::from_index(2, 3, 3).get(0, 1), 1);
    }

    #[test]
    fn minor_examples() {
        let f = gf(3);
        let id = SymMatrix::identity(3);
        assert_eq!(minor_value(&id, &[0, 1], &[1, 2], &f), Ok(0));
        assert_eq!(minor_value(&id, &[], &[], &f), Ok(1));
        let m = SymMatrix::from_upper(1, vec![2]).unwrap();
        assert_eq!(minor_value(&m, &[0], &[0], &f), Ok(2));
        assert!(matches!(minor_value(&id, &[0], &[], &f), Err(Error::ShapeMismatch(_))));
        assert!(matches!(minor_value(&id, &[3], &[0], &f), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn doset_counts() {
        assert_eq!(doset_pairs(2).len(), 5);
        assert_eq!(doset_pairs(3).len(), 14);
        let excluded = MinorPair::new(vec![1], vec![0]).unwrap();
        assert!(!doset_pairs(2).contains(&excluded));
        assert!(matches!(MinorPair::doset(vec![1], vec![0]), Err(Error::NotDoset { .. })));
        for ell in 1..=6 {
            let pairs = doset_pairs(ell);
            assert_eq!(pairs.len() as u128, catalan(ell as u64 + 1));
            for t in 0..=ell {
                let c = pairs.iter().filter(|p| p.size() == t).count() as u128;
                assert_eq!(c, narayana(ell as u64 + 1, t as u64 + 1));
            }
            assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn doset_order_for_ell_two() {
        let shown: Vec<String> = doset_pairs(2).iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["-|-", "1|1", "1|2", "2|2", "1,2|1,2"]);
    }

    #[test]
    fn transposed_minors_agree_on_symmetric_points() {
        for q in [2, 3] {
            let f = gf(q);
            for ell in 1..=3 {
                let pairs = all_minor_pairs(ell);
                for s in enumerate_symmetric(ell, &f, DEFAULT_BUDGET).unwrap() {
                    for p in &pairs {
                        assert_eq!(p.value(&s, &f), p.transposed().value(&s, &f));
                    }
                }
            }
        }
    }

    #[test]
    fn cofactor_expansion_of_det3() {
        // det_{123,123}(X) = det_{12,12} X_33 − det_{13,12} X_23 + det_{23,12} X_13
        for q in [2, 3] {
            let f = gf(q);
            for s in enumerate_symmetric(3, &f, DEFAULT_BUDGET).unwrap() {
                let d = |r: &[usize], c: &[usize]| minor_value(&s, r, c, &f).unwrap();
                let mut rhs = f.mul(d(&[0, 1], &[0, 1]), s.get(2, 2));
                rhs = f.sub(rhs, f.mul(d(&[0, 2], &[0, 1]), s.get(1, 2)));
                rhs = f.add(rhs, f.mul(d(&[1, 2], &[0, 1]), s.get(0, 2)));
                assert_eq!(d(&[0, 1, 2], &[0, 1, 2]), rhs);
            }
        }
    }

    #[test]
    fn fullrank_examples() {
        assert_eq!(count_fullrank_symmetric(2, &gf(2), DEFAULT_BUDGET), Ok((4, 4)));
        assert_eq!(count_fullrank_symmetric(1, &gf(3), DEFAULT_BUDGET), Ok((2, 2)));
        assert_eq!(count_fullrank_symmetric(3, &gf(2), DEFAULT_BUDGET), Ok((28, 28)));
        for ell in 1..=3 {
            for q in [2, 3, 4, 5] {
                let (e, c) = count_fullrank_symmetric(ell, &gf(q), DEFAULT_BUDGET).unwrap();
                assert_eq!(e, c, "ell={ell} q={q}");
            }
        }
    }

    #[test]
    fn isotropic_iff_symmetric() {
        let f3 = gf(3);
        assert!(isotropic_embed_check(&Matrix::zero(2), &f3));
        let mut e12 = Matrix::zero(2);
        e12.set(0, 1, 1);
        assert!(!isotropic_embed_check(&e12, &f3));
        for q in [2u32, 3] {
            let f = gf(q as u64);
            for idx in 0..(q as u64).pow(4) {
                let m = Matrix::from_index(2, q, idx);
                assert_eq!(isotropic_embed_check(&m, &f), m.is_symmetric());
            }
        }
    }

    #[test]
    fn matrix_algebra() {
        let f = gf(5);
        let a = Matrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]]).unwrap();
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&inv, &f).unwrap(), Matrix::identity(3));
        assert_eq!(a.det(&f), f.add(1, f.mul(2, 3)));
        let sing = Matrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.inverse(&f), Err(Error::SingularMatrix));
        let p = Matrix::permutation(&[2, 0, 1]).unwrap();
        let x = Matrix::from_index(3, 5, 123_456);
        let y = p.transpose().mul(&x, &f).unwrap().mul(&p, &f).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(y.get(i, j), x.get([2, 0, 1][i], [2, 0, 1][j]));
            }
        }
    }

    #[test]
    fn congruence_matches_matrix_product() {
        let f = gf(3);
        let a = Matrix::from_rows(&[vec![1, 2], vec![0, 2]]).unwrap();
        let s = SymMatrix::from_upper(2, vec![1, 0, 2]).unwrap();
        for x in enumerate_symmetric(2, &f, DEFAULT_BUDGET).unwrap() {
            let direct =
                a.transpose().mul(&x.to_matrix(), &f).unwrap().mul(&a, &f).unwrap().add(&s.to_matrix(), &f).unwrap();
            assert_eq!(x.congruence(&a, &s, &f).unwrap().to_matrix(), direct);
        }
    }
}
