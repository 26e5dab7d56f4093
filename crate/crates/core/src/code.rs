//! Generator matrices of the symplectic and affine Grassmann codes, and the
//! structural operations on them: encoding, puncturing and shortening,
//! automorphism checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::linalg::{nullspace, rref, vec_mat, LeftSolver};
use crate::minors::MinorCombination;
use crate::symmetric::{all_minor_pairs, doset_pairs, triangle_len, Matrix, MinorPair, SymMatrix, SymmetricSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Doset minors evaluated at all symmetric matrices.
    Symplectic,
    /// All minors evaluated at all ℓ×ℓ matrices.
    AffineGrassmann,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Symplectic => "symplectic",
            Variant::AffineGrassmann => "affine",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symplectic" => Ok(Variant::Symplectic),
            "affine" | "affine_grassmann" | "affine-grassmann" => Ok(Variant::AffineGrassmann),
            other => Err(Error::Unsupported(format!("unknown code variant '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Puncture,
    Shorten,
}

/// A linear code given by a generator matrix whose columns are labelled by
/// canonical matrix indices (symmetric or general, following the variant).
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<GaloisField>,
    ell: usize,
    variant: Variant,
    generator: Vec<Vec<u32>>,
    /// Row labels; `None` once rows have been re-reduced.
    basis: Option<Vec<MinorPair>>,
    /// Sorted canonical indices of the evaluation points.
    columns: Vec<u64>,
    solver: OnceLock<LeftSolver>,
}

pub fn code_length(ell: usize, q: u32, variant: Variant) -> u128 {
    let exp = match variant {
        Variant::Symplectic => triangle_len(ell),
        Variant::AffineGrassmann => ell * ell,
    };
    (q as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

impl LinearCode {
    /// Evaluates every basis minor at every point; `budget` bounds `k · n`.
    pub fn build(ell: usize, field: Arc<GaloisField>, variant: Variant, budget: u128) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ShapeMismatch("ell must be at least 1".into()));
        }
        let q = field.order();
        let basis = match variant {
            Variant::Symplectic => doset_pairs(ell),
            Variant::AffineGrassmann => all_minor_pairs(ell),
        };
        let n = code_length(ell, q, variant);
        let required = n.saturating_mul(basis.len() as u128);
        if required > budget || n > usize::MAX as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let n = n as usize;
        let mut generator = vec![vec![0u32; n]; basis.len()];
        let f = &*field;
        match variant {
            Variant::Symplectic => {
                let space = SymmetricSpace::new(ell, q, budget)?;
                for (j, point) in space.iter().enumerate() {
                    for (row, pair) in generator.iter_mut().zip(&basis) {
                        row[j] = pair.value(&point, f)?;
                    }
                }
            }
            Variant::AffineGrassmann => {
                for j in 0..n {
                    let point = Matrix::from_index(ell, q, j as u64);
                    for (row, pair) in generator.iter_mut().zip(&basis) {
                        row[j] = pair.value(&point, f)?;
                    }
                }
            }
        }
        Ok(LinearCode {
            field,
            ell,
            variant,
            generator,
            basis: Some(basis),
            columns: (0..n as u64).collect(),
            solver: OnceLock::new(),
        })
    }

    /// Wraps an explicit generator; column labels default to `0..n`.
    pub fn from_generator(
        field: Arc<GaloisField>,
        ell: usize,
        variant: Variant,
        generator: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = generator.first().map_or(0, Vec::len);
        if generator.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("generator rows differ in length".into()));
        }
        if let Some(&bad) = generator.iter().flatten().find(|&&x| !field.contains(x)) {
            return Err(Error::ElementOutOfRange { value: bad, q: field.order() });
        }
        let full = code_length(ell, field.order(), variant) == n as u128;
        let basis = match variant {
            Variant::Symplectic if full && generator.len() == doset_pairs(ell).len() => Some(doset_pairs(ell)),
            _ => None,
        };
        Ok(LinearCode {
            field,
            ell,
            variant,
            generator,
            basis,
            columns: (0..n as u64).collect(),
            solver: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.generator.len()
    }

    /// Rank of the generator.
    pub fn dimension(&self) -> usize {
        rref(&self.generator, &self.field).rank()
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    pub fn basis(&self) -> Option<&[MinorPair]> {
        self.basis.as_deref()
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    /// The evaluation point behind column `j`.
    pub fn column_matrix(&self, j: usize) -> Matrix {
        let q = self.field.order();
        match self.variant {
            Variant::Symplectic => SymMatrix::from_index(self.ell, q, self.columns[j]).to_matrix(),
            Variant::AffineGrassmann => Matrix::from_index(self.ell, q, self.columns[j]),
        }
    }

    fn position_of(&self, index: u64) -> Option<usize> {
        self.columns.binary_search(&index).ok()
    }

    fn basis_position(&self) -> Result<HashMap<&MinorPair, usize>> {
        let basis = self.basis.as_ref().ok_or(Error::LabelMismatch)?;
        Ok(basis.iter().enumerate().map(|(i, p)| (p, i)).collect())
    }

    /// Message vector of `f` with respect to the row labels.
    pub fn message(&self, f: &MinorCombination) -> Result<Vec<u32>> {
        if f.ell() != self.ell || f.field() != &self.field {
            return Err(Error::LabelMismatch);
        }
        let pos = self.basis_position()?;
        let mut msg = vec![0u32; self.generator.len()];
        for (p, c) in f.terms() {
            msg[*pos.get(p).ok_or(Error::LabelMismatch)?] = c;
        }
        Ok(msg)
    }

    /// Codeword `(f(P_1), …, f(P_n))` in column order.
    pub fn encode(&self, f: &MinorCombination) -> Result<Vec<u32>> {
        Ok(self.encode_message(&self.message(f)?))
    }

    pub fn encode_message(&self, msg: &[u32]) -> Vec<u32> {
        vec_mat(msg, &self.generator, &self.field)
    }

    fn solver(&self) -> Result<&LeftSolver> {
        if let Some(s) = self.solver.get() {
            return Ok(s);
        }
        let s = LeftSolver::new(&self.generator, &self.field)?;
        Ok(self.solver.get_or_init(|| s))
    }

    /// Inverse of [`LinearCode::encode`]; requires labelled, independent rows.
    pub fn decode(&self, codeword: &[u32]) -> Result<MinorCombination> {
        let basis = self.basis.as_ref().ok_or(Error::LabelMismatch)?;
        if codeword.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "codeword of length {}, code length {}",
                codeword.len(),
                self.len()
            )));
        }
        let c = self.solver()?.solve(codeword, &self.field)?;
        MinorCombination::from_terms(self.field.clone(), self.ell, basis.iter().cloned().zip(c))
    }

    /// For each column `j`, the column holding the image `AᵀP_jA + S` of its point.
    pub fn point_map(&self, a: &Matrix, s: &SymMatrix) -> Result<Vec<usize>> {
        let f = &*self.field;
        if a.det(f) == 0 {
            return Err(Error::SingularMatrix);
        }
        if a.size() != self.ell || s.ell() != self.ell {
            return Err(Error::ShapeMismatch("map operands must be ell x ell".into()));
        }
        let q = f.order();
        let at = a.transpose();
        let sm = s.to_matrix();
        (0..self.len())
            .map(|j| {
                let image = match self.variant {
                    Variant::Symplectic => {
                        SymMatrix::from_index(self.ell, q, self.columns[j]).congruence(a, s, f)?.index(q)
                    }
                    Variant::AffineGrassmann => at.mul(&self.column_matrix(j), f)?.mul(a, f)?.add(&sm, f)?.index(q),
                };
                self.position_of(image)
                    .ok_or_else(|| Error::ShapeMismatch("column set is not closed under the map".into()))
            })
            .collect()
    }

    /// Whether permuting coordinates by `perm` (new `j` reads old `perm[j]`) maps the code into itself.
    pub fn preserved_by_permutation(&self, perm: &[usize]) -> Result<bool> {
        if perm.len() != self.len() {
            return Err(Error::ShapeMismatch("permutation length differs from code length".into()));
        }
        let e = rref(&self.generator, &self.field);
        Ok(self.generator.iter().all(|row| {
            let moved: Vec<u32> = perm.iter().map(|&j| row[j]).collect();
            e.contains(&moved, &self.field)
        }))
    }

    /// Whether `X ↦ AᵀXA + S` maps the code into itself.
    pub fn automorphism_check(&self, a: &Matrix, s: &SymMatrix) -> Result<bool> {
        let perm = self.point_map(a, s)?;
        self.preserved_by_permutation(&perm)
    }

    /// Columns of an affine Grassmann code whose point is not symmetric.
    pub fn non_symmetric_columns(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| !self.column_matrix(j).is_symmetric()).collect()
    }

    /// Deletes `coords` (puncture), or keeps only codewords vanishing on
    /// `coords` and then deletes them (shorten). The result has full row rank.
    pub fn puncture_shorten(&self, coords: &[usize], mode: Mode) -> Result<LinearCode> {
        let n = self.len();
        let mut drop = vec![false; n];
        for &c in coords {
            if c >= n {
                return Err(Error::IndexOutOfRange { index: c, size: n });
            }
            drop[c] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&j| !drop[j]).collect();
        if keep.is_empty() {
            return Err(Error::EmptyResult);
        }
        let restrict = |rows: &[Vec<u32>]| -> Vec<Vec<u32>> {
            rows.iter().map(|r| keep.iter().map(|&j| r[j]).collect()).collect()
        };
        let f = &*self.field;
        let (generator, basis) = match mode {
            Mode::Puncture => {
                let g = restrict(&self.generator);
                let e = rref(&g, f);
                if e.rank() == g.len() {
                    (g, self.basis.clone())
                } else {
                    (e.rows, None)
                }
            }
            Mode::Shorten => {
                let k = self.generator.len();
                let constraints: Vec<Vec<u32>> =
                    (0..n).filter(|&j| drop[j]).map(|j| self.generator.iter().map(|r| r[j]).collect()).collect();
                let messages = if constraints.is_empty() {
                    (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()
                } else {
                    nullspace(&constraints, k, f)
                };
                let words: Vec<Vec<u32>> = messages.iter().map(|m| vec_mat(m, &self.generator, f)).collect();
                (rref(&restrict(&words), f).rows, None)
            }
        };
        if generator.is_empty() {
            return Err(Error::EmptyResult);
        }
        Ok(LinearCode {
            field: self.field.clone(),
            ell: self.ell,
            variant: self.variant,
            generator,
            basis,
            columns: keep.iter().map(|&j| self.columns[j]).collect(),
            solver: OnceLock::new(),
        })
    }

    /// Row-space equality after matching columns by their evaluation points.
    pub fn same_code_as(&self, other: &LinearCode) -> bool {
        if self.field != other.field || self.len() != other.len() {
            return false;
        }
        let position: HashMap<Matrix, usize> = (0..other.len()).map(|j| (other.column_matrix(j), j)).collect();
        let Some(order) =
            (0..self.len()).map(|j| position.get(&self.column_matrix(j)).copied()).collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let aligned: Vec<Vec<u32>> = other.generator.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
        rref(&self.generator, &self.field) == rref(&aligned, &self.field)
    }
}

/// Number of nonzero coordinates.
pub fn weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}
