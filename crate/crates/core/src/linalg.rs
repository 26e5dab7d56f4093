//! Dense linear algebra over GF(q) on row vectors.

use crate::error::{Error, Result};
use crate::field::GaloisField;

/// Reduced row echelon form: nonzero rows only, each with a leading 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination against the pivot rows.
    pub fn reduce(&self, v: &[u32], f: &GaloisField) -> Vec<u32> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p];
            if c != 0 {
                axpy(&mut r, f.neg(c), row, f);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32], f: &GaloisField) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }
}

/// `y += a * x`.
pub fn axpy(y: &mut [u32], a: u32, x: &[u32], f: &GaloisField) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

pub fn rref(rows: &[Vec<u32>], f: &GaloisField) -> Rref {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = f.neg(row[c]);
                axpy(row, factor, &pivot_row, f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

pub fn rank(rows: &[Vec<u32>], f: &GaloisField) -> usize {
    rref(rows, f).rank()
}

/// Basis of `{ v : rows · v = 0 }`, i.e. the dual code of the row space.
pub fn nullspace(rows: &[Vec<u32>], ncols: usize, f: &GaloisField) -> Vec<Vec<u32>> {
    let e = rref(rows, f);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

pub fn row_space_eq(a: &[Vec<u32>], b: &[Vec<u32>], f: &GaloisField) -> bool {
    rref(a, f) == rref(b, f)
}

/// `c · G` for a message `c`.
pub fn vec_mat(c: &[u32], g: &[Vec<u32>], f: &GaloisField) -> Vec<u32> {
    let n = g.first().map_or(0, Vec::len);
    let mut out = vec![0u32; n];
    for (&ci, row) in c.iter().zip(g) {
        axpy(&mut out, ci, row, f);
    }
    out
}

/// Solves `c · G = v` for a generator `G` of full row rank.
#[derive(Clone, Debug)]
pub struct LeftSolver {
    generator: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// Inverse of the k×k submatrix of `G` on the pivot columns.
    inv: Vec<Vec<u32>>,
}

impl LeftSolver {
    pub fn new(generator: &[Vec<u32>], f: &GaloisField) -> Result<Self> {
        let k = generator.len();
        let e = rref(generator, f);
        if e.rank() != k {
            return Err(Error::SingularMatrix);
        }
        let block: Vec<Vec<u32>> = (0..k).map(|i| e.pivots.iter().map(|&p| generator[i][p]).collect()).collect();
        let inv = invert(&block, f)?;
        Ok(LeftSolver { generator: generator.to_vec(), pivots: e.pivots, inv })
    }

    pub fn solve(&self, v: &[u32], f: &GaloisField) -> Result<Vec<u32>> {
        let vp: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        let c = vec_mat(&vp, &self.inv, f);
        if vec_mat(&c, &self.generator, f) != v {
            return Err(Error::NotInSpan);
        }
        Ok(c)
    }
}

/// Inverse of a square matrix given as rows.
pub fn invert(m: &[Vec<u32>], f: &GaloisField) -> Result<Vec<Vec<u32>>> {
    let k = m.len();
    let aug: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let e = rref(&aug, f);
    if e.rank() != k || e.pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::SingularMatrix);
    }
    Ok(e.rows.into_iter().map(|r| r[k..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let f = GaloisField::from_order(3).unwrap();
        let g = vec![vec![1, 0, 2, 1], vec![0, 1, 1, 1], vec![1, 1, 0, 2]];
        assert_eq!(rank(&g, &f), 2);
        let ns = nullspace(&g, 4, &f);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &g {
                let dot = row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn left_solve_roundtrip() {
        let f = GaloisField::from_order(5).unwrap();
        let g = vec![vec![0, 1, 2, 3, 4], vec![1, 1, 1, 1, 1], vec![0, 0, 1, 4, 1]];
        let s = LeftSolver::new(&g, &f).unwrap();
        let c = vec![3, 0, 4];
        let v = vec_mat(&c, &g, &f);
        assert_eq!(s.solve(&v, &f).unwrap(), c);
        assert_eq!(s.solve(&[1, 0, 0, 0, 0], &f), Err(Error::NotInSpan));
    }

    #[test]
    fn row_space_equality_ignores_basis() {
        let f = GaloisField::from_order(2).unwrap();
        let a = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let b = vec![vec![1, 0, 1], vec![1, 1, 0]];
        let c = vec![vec![1, 0, 0], vec![0, 1, 1]];
        assert!(row_space_eq(&a, &b, &f));
        assert!(!row_space_eq(&a, &c, &f));
    }
}
