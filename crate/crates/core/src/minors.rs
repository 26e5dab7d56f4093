//! Linear combinations of doset minors and the affine congruence action on them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::code::{LinearCode, Variant};
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::poly::{expand_to_polynomial, Polynomial};
use crate::symmetric::{
    format_index_set, parse_index_set, Matrix, MinorPair, SquareEntries, SymMatrix, SymmetricSpace,
};

/// `Σ f_{I,J} det_{I,J}` over doset pairs; absent pairs have coefficient 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCombination {
    field: Arc<GaloisField>,
    ell: usize,
    coeffs: BTreeMap<MinorPair, u32>,
}

impl MinorCombination {
    pub fn zero(field: Arc<GaloisField>, ell: usize) -> Self {
        MinorCombination { field, ell, coeffs: BTreeMap::new() }
    }

    pub fn constant(field: Arc<GaloisField>, ell: usize, c: u32) -> Result<Self> {
        let mut f = Self::zero(field, ell);
        f.set(MinorPair::empty(), c)?;
        Ok(f)
    }

    /// Single minor `c · det_{I,J}` from 1-based index lists.
    pub fn minor(field: Arc<GaloisField>, ell: usize, rows: &[usize], cols: &[usize], c: u32) -> Result<Self> {
        let mut f = Self::zero(field, ell);
        f.set(MinorPair::one_based(rows, cols)?, c)?;
        Ok(f)
    }

    pub fn from_terms<I>(field: Arc<GaloisField>, ell: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MinorPair, u32)>,
    {
        let mut f = Self::zero(field, ell);
        for (p, c) in terms {
            f.add_to(p, c)?;
        }
        Ok(f)
    }

    fn validate(&self, pair: &MinorPair, c: u32) -> Result<()> {
        if !self.field.contains(c) {
            return Err(Error::ElementOutOfRange { value: c, q: self.field.order() });
        }
        if let Some(m) = pair.max_index() {
            if m >= self.ell {
                return Err(Error::IndexOutOfRange { index: m + 1, size: self.ell });
            }
        }
        if !pair.is_doset() {
            return Err(Error::NotDoset { rows: pair.rows_one_based(), cols: pair.cols_one_based() });
        }
        Ok(())
    }

    pub fn set(&mut self, pair: MinorPair, c: u32) -> Result<()> {
        self.validate(&pair, c)?;
        if c == 0 {
            self.coeffs.remove(&pair);
        } else {
            self.coeffs.insert(pair, c);
        }
        Ok(())
    }

    pub fn add_to(&mut self, pair: MinorPair, c: u32) -> Result<()> {
        let v = self.field.add(self.coeff(&pair), c);
        self.set(pair, v)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn coeff(&self, pair: &MinorPair) -> u32 {
        self.coeffs.get(pair).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MinorPair, u32)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> Vec<&MinorPair> {
        self.coeffs.keys().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        if self.ell != other.ell {
            return Err(Error::ShapeMismatch(format!("ell {} vs {}", self.ell, other.ell)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_to(p.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.field.clone(), self.ell);
        for (p, a) in self.terms() {
            let v = self.field.mul(a, c);
            if v != 0 {
                out.coeffs.insert(p.clone(), v);
            }
        }
        out
    }

    /// `f(M)`. The point must have size ℓ and entries in the field.
    pub fn evaluate<M: SquareEntries>(&self, m: &M) -> Result<u32> {
        if m.size() != self.ell {
            return Err(Error::ShapeMismatch(format!("point of size {} for ell = {}", m.size(), self.ell)));
        }
        let q = self.field.order();
        for i in 0..self.ell {
            for j in 0..self.ell {
                if m.entry(i, j) >= q {
                    return Err(Error::SpecMismatch);
                }
            }
        }
        let f = &*self.field;
        let mut acc = 0;
        for (p, c) in self.terms() {
            acc = f.add(acc, f.mul(c, p.value(m, f)?));
        }
        Ok(acc)
    }

    /// Number of symmetric matrices where `f` is nonzero.
    pub fn weight(&self, budget: u128) -> Result<u64> {
        let space = SymmetricSpace::new(self.ell, self.field.order(), budget)?;
        let mut w = 0u64;
        for s in space.iter() {
            if self.evaluate(&s)? != 0 {
                w += 1;
            }
        }
        Ok(w)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let f = &*self.field;
        let mut out = Polynomial::zero(self.ell);
        for (p, c) in self.terms() {
            let e = expand_to_polynomial(p, self.ell, f).expect("pairs are validated on insertion");
            out = out.add(&e.scale(c, f), f);
        }
        out
    }

    /// Support minors not contained in any other support minor.
    pub fn maximal_minors(&self) -> Vec<&MinorPair> {
        let support = self.support();
        support.iter().copied().filter(|p| !support.iter().any(|o| o != p && o.contains(p))).collect()
    }

    pub fn is_maximal(&self, pair: &MinorPair) -> bool {
        self.coeff(pair) != 0 && self.maximal_minors().contains(&pair)
    }

    /// Restriction to minors of size `t`.
    pub fn graded_part(&self, t: usize) -> Self {
        let coeffs = self.coeffs.iter().filter(|(p, _)| p.size() == t).map(|(p, &c)| (p.clone(), c)).collect();
        MinorCombination { field: self.field.clone(), ell: self.ell, coeffs }
    }

    /// Parses lines `I|J|coeff`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, field: Arc<GaloisField>, ell: usize) -> Result<Self> {
        let mut f = Self::zero(field, ell);
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: n + 1, msg };
            let parts: Vec<&str> = line.split('|').collect();
            if parts.len() != 3 {
                return Err(perr("expected I|J|coeff".into()));
            }
            let rows = parse_index_set(parts[0]).map_err(perr)?;
            let cols = parse_index_set(parts[1]).map_err(perr)?;
            let c: u32 = parts[2].trim().parse().map_err(|_| perr(format!("bad coefficient '{}'", parts[2])))?;
            let pair = MinorPair::new(rows, cols).map_err(|e| perr(e.to_string()))?;
            f.add_to(pair, c).map_err(|e| perr(e.to_string()))?;
        }
        Ok(f)
    }
}

impl fmt::Display for MinorCombination {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in self.terms() {
            writeln!(out, "{}|{}|{}", format_index_set(p.rows()), format_index_set(p.cols()), c)?;
        }
        Ok(())
    }
}

fn check_action_operands(f: &MinorCombination, a: &Matrix, s: &SymMatrix) -> Result<()> {
    if a.size() != f.ell || s.ell() != f.ell {
        return Err(Error::ShapeMismatch("action operands must be ell x ell".into()));
    }
    if a.det(&f.field) == 0 {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// `g(X) = f(AᵀXA + S)`, with coefficients recovered against the code's basis.
pub fn act_in(code: &LinearCode, f: &MinorCombination, a: &Matrix, s: &SymMatrix) -> Result<MinorCombination> {
    check_action_operands(f, a, s)?;
    if code.variant() != Variant::Symplectic || code.ell() != f.ell || code.field() != &f.field {
        return Err(Error::LabelMismatch);
    }
    let v = code.encode(f)?;
    let perm = code.point_map(a, s)?;
    let moved: Vec<u32> = perm.iter().map(|&j| v[j]).collect();
    code.decode(&moved)
}

/// `g(X) = f(AᵀXA + S)`; builds the symplectic code for `(ℓ, q)` internally.
pub fn act(f: &MinorCombination, a: &Matrix, s: &SymMatrix, budget: u128) -> Result<MinorCombination> {
    check_action_operands(f, a, s)?;
    let code = LinearCode::build(f.ell, f.field.clone(), Variant::Symplectic, budget)?;
    act_in(&code, f, a, s)
}

/// Translation removing every size-(|I|−1) minor inside `I` from `f`.
///
/// Requires odd q and `det_{I,I}` maximal in the support with coefficient 1.
/// Returns `(g, S)` with `g(X) = f(X + S)`.
pub fn clear_subminors(
    code: &LinearCode,
    f: &MinorCombination,
    index_set: &[usize],
) -> Result<(MinorCombination, SymMatrix)> {
    let field = &*f.field;
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let top = MinorPair::new(index_set.to_vec(), index_set.to_vec())?;
    let c = f.coeff(&top);
    if c == 0 || !f.is_maximal(&top) {
        return Err(Error::NotMaximal);
    }
    if c != 1 {
        return Err(Error::CoefficientNotOne(c));
    }
    let without = |x: usize| -> Vec<usize> { index_set.iter().copied().filter(|&y| y != x).collect() };
    let half = field.inv(2)?;
    let mut s = SymMatrix::zero(f.ell);
    for (pa, &ia) in index_set.iter().enumerate() {
        let diag = MinorPair::new(without(ia), without(ia))?;
        s.set(ia, ia, field.neg(f.coeff(&diag)));
        for (pb, &ib) in index_set.iter().enumerate().skip(pa + 1) {
            let off = MinorPair::new(without(ib), without(ia))?.doset_representative();
            let mut v = field.mul(half, f.coeff(&off));
            if (pa + pb) % 2 == 0 {
                v = field.neg(v);
            }
            s.set(ia, ib, v);
        }
    }
    let g = act_in(code, f, &Matrix::identity(f.ell), &s)?;
    Ok((g, s))
}

/// Outcome of one spread-reduction step.
#[derive(Clone, Debug)]
pub struct SpreadReduction {
    /// `g(X) = f(Cᵀ X C)` for the congruence `C`.
    pub g: MinorCombination,
    pub congruence: Matrix,
    /// A maximal minor of `g` with the original size and spread one smaller.
    pub minor: MinorPair,
}

fn spread_key(p: &MinorPair) -> (usize, std::cmp::Reverse<usize>) {
    (p.spread().len(), std::cmp::Reverse(p.size()))
}

/// One step of the spread reduction: normalizes a maximal minor of minimal
/// spread by a permutation congruence, then applies `I + E_{1,s'}`.
pub fn spread_reduce(code: &LinearCode, f: &MinorCombination) -> Result<SpreadReduction> {
    let ell = f.ell;
    let field = &*f.field;
    let chosen = f.maximal_minors().into_iter().min_by_key(|p| spread_key(p)).ok_or(Error::ZeroPolynomial)?.clone();
    let k = chosen.size();
    let s = chosen.spread().len();
    if s == k {
        return Err(Error::AlreadyMinimal);
    }

    // New order: I\J, I∩J, J\I, then everything else.
    let (rows, cols) = (chosen.rows(), chosen.cols());
    let mut order: Vec<usize> = rows.iter().copied().filter(|x| !cols.contains(x)).collect();
    order.extend(rows.iter().copied().filter(|x| cols.contains(x)));
    order.extend(cols.iter().copied().filter(|x| !rows.contains(x)));
    order.extend((0..ell).filter(|x| !rows.contains(x) && !cols.contains(x)));
    let mut new_pos = vec![0usize; ell];
    for (pos, &old) in order.iter().enumerate() {
        new_pos[old] = pos;
    }
    let p = Matrix::permutation(&new_pos)?;
    let h = act_in(code, f, &p, &SymMatrix::zero(ell))?;

    let target = if s == k + 1 { s - 1 } else { s - 2 };
    let a = Matrix::elementary(ell, 0, target, 1);
    let g = act_in(code, &h, &a, &SymMatrix::zero(ell))?;
    let congruence = a.mul(&p, field)?;

    let minor = g
        .maximal_minors()
        .into_iter()
        .filter(|m| m.size() == k && m.spread().len() == s - 1)
        .min()
        .cloned()
        .ok_or(Error::SpreadReductionFailed { size: k, spread: s - 1 })?;
    Ok(SpreadReduction { g, congruence, minor })
}
