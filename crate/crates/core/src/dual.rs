//! Low-weight structure of the dual code, found from column dependencies of
//! the generator without materializing a dual generator.

use std::collections::HashMap;

use crate::code::LinearCode;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::linalg::nullspace;
use crate::symmetric::SymMatrix;
use crate::weights::{weight_enumerator, SearchOptions, WeightReport};

/// A dual codeword given by its nonzero coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCodeword {
    pub positions: Vec<usize>,
    pub coefficients: Vec<u32>,
}

impl DualCodeword {
    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    /// Whether `Σ c_j · column_j = 0` for the generator of `code`.
    pub fn is_dual_of(&self, code: &LinearCode) -> bool {
        let f = &**code.field();
        code.generator().iter().all(|row| {
            self.positions.iter().zip(&self.coefficients).fold(0, |acc, (&j, &c)| f.add(acc, f.mul(c, row[j]))) == 0
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualScan {
    /// Smallest dual weight found up to `wmax`, if any.
    pub min_weight: Option<usize>,
    pub witness: Option<DualCodeword>,
    pub wmax: usize,
}

/// Scales `v` so its first nonzero entry is 1; returns the scale removed.
fn normalize(v: &[u32], f: &GaloisField) -> Option<(Vec<u32>, u32)> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead).expect("lead is nonzero");
    Some((v.iter().map(|&x| f.mul(x, inv)).collect(), lead))
}

fn columns(code: &LinearCode) -> Vec<Vec<u32>> {
    (0..code.len()).map(|j| code.generator().iter().map(|r| r[j]).collect()).collect()
}

/// `(a, b, λ, s)` with `col_a + λ col_b = s · key`, `key` normalized.
type PairTerm = (usize, usize, u32, u32);

/// Smallest dual weight `<= wmax` (at most 4), searched by column dependencies.
pub fn dual_low_weight_scan(code: &LinearCode, wmax: usize, budget: u128) -> Result<DualScan> {
    if wmax > 4 {
        return Err(Error::Unsupported(format!("dual scan supports wmax <= 4, got {wmax}")));
    }
    let f = &**code.field();
    let (n, k, q) = (code.len() as u128, code.rows() as u128, f.order() as u128);
    let required = match wmax {
        0 | 1 => n * k,
        2 => n * k * 2,
        _ => binomial(n as u64, 2) * (q - 1) * k * 2,
    };
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let cols = columns(code);
    let found = |w: usize, cw: DualCodeword| {
        debug_assert!(cw.is_dual_of(code));
        Ok(DualScan { min_weight: Some(w), witness: Some(cw), wmax })
    };

    if wmax >= 1 {
        if let Some(j) = cols.iter().position(|c| c.iter().all(|&x| x == 0)) {
            return found(1, DualCodeword { positions: vec![j], coefficients: vec![1] });
        }
    }
    // Normal form of every column, and where each normal form occurs.
    let normal: Vec<(Vec<u32>, u32)> = cols.iter().map(|c| normalize(c, f).expect("no zero column")).collect();
    let mut by_form: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (j, (nf, _)) in normal.iter().enumerate() {
        by_form.entry(nf.as_slice()).or_default().push(j);
    }
    if wmax >= 2 {
        if let Some(list) = by_form.values().filter(|l| l.len() > 1).min_by_key(|l| l[0]) {
            let (a, b) = (list[0], list[1]);
            // s_b·col_a − s_a·col_b = 0
            let coefficients = vec![normal[b].1, f.neg(normal[a].1)];
            return found(2, DualCodeword { positions: vec![a, b], coefficients });
        }
    }
    if wmax >= 3 {
        for a in 0..cols.len() {
            for b in a + 1..cols.len() {
                for lambda in 1..f.order() {
                    let v: Vec<u32> = cols[a].iter().zip(&cols[b]).map(|(&x, &y)| f.add(x, f.mul(lambda, y))).collect();
                    let (nf, s) = normalize(&v, f).expect("columns are pairwise independent");
                    if let Some(&c) = by_form.get(nf.as_slice()).and_then(|l| l.first()) {
                        let sc = normal[c].1;
                        let mut cw = [(a, sc), (b, f.mul(sc, lambda)), (c, f.neg(s))];
                        cw.sort_unstable();
                        return found(
                            3,
                            DualCodeword {
                                positions: cw.iter().map(|x| x.0).collect(),
                                coefficients: cw.iter().map(|x| x.1).collect(),
                            },
                        );
                    }
                }
            }
        }
    }
    if wmax >= 4 {
        // Meet in the middle over combinations col_a + λ col_b.
        let mut sums: HashMap<Vec<u32>, Vec<PairTerm>> = HashMap::new();
        for a in 0..cols.len() {
            for b in a + 1..cols.len() {
                for lambda in 1..f.order() {
                    let v: Vec<u32> = cols[a].iter().zip(&cols[b]).map(|(&x, &y)| f.add(x, f.mul(lambda, y))).collect();
                    let (nf, s) = normalize(&v, f).expect("columns are pairwise independent");
                    let entry = sums.entry(nf).or_default();
                    if let Some(&(c, d, mu, t)) = entry.iter().find(|e| e.0 != a && e.0 != b && e.1 != a && e.1 != b) {
                        // t·(col_a + λ col_b) − s·(col_c + μ col_d) = 0
                        let mut cw = [(a, t), (b, f.mul(t, lambda)), (c, f.neg(s)), (d, f.neg(f.mul(s, mu)))];
                        cw.sort_unstable();
                        return found(
                            4,
                            DualCodeword {
                                positions: cw.iter().map(|x| x.0).collect(),
                                coefficients: cw.iter().map(|x| x.1).collect(),
                            },
                        );
                    }
                    entry.push((a, b, lambda, s));
                }
            }
        }
    }
    Ok(DualScan { min_weight: None, witness: None, wmax })
}

/// A candidate dual codeword given by evaluation points and coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitness {
    support: Vec<SymMatrix>,
    coefficients: Vec<u32>,
}

impl DualWitness {
    pub fn new(support: Vec<SymMatrix>, coefficients: Vec<u32>) -> Result<Self> {
        if support.len() != coefficients.len() {
            return Err(Error::ShapeMismatch("support and coefficients differ in length".into()));
        }
        if coefficients.contains(&0) {
            return Err(Error::ShapeMismatch("witness coefficients must be nonzero".into()));
        }
        for (i, s) in support.iter().enumerate() {
            if support[..i].contains(s) {
                return Err(Error::ShapeMismatch("witness support entries must be distinct".into()));
            }
        }
        Ok(DualWitness { support, coefficients })
    }

    /// Support `{0, E_{1,1}, αE_{1,1}}` with coefficients `(1, −α/(α−1), 1/(α−1))`, for `α ∉ {0, 1}`.
    pub fn scalar_line(ell: usize, f: &GaloisField, alpha: u32) -> Result<Self> {
        if alpha == 0 || alpha == 1 || !f.contains(alpha) {
            return Err(Error::Unsupported(format!("alpha must lie in GF({})\\{{0,1}}", f.order())));
        }
        let denom = f.inv(f.sub(alpha, 1))?;
        let mut e11 = SymMatrix::zero(ell);
        e11.set(0, 0, 1);
        let mut ae11 = SymMatrix::zero(ell);
        ae11.set(0, 0, alpha);
        Self::new(vec![SymMatrix::zero(ell), e11, ae11], vec![1, f.neg(f.mul(alpha, denom)), denom])
    }

    /// Support `{0, E_{1,1}, E_{1,2}+E_{2,1}, E_{1,1}+E_{1,2}+E_{2,1}}`, all coefficients 1.
    pub fn even_square(ell: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::ShapeMismatch("needs ell >= 2".into()));
        }
        let mut e11 = SymMatrix::zero(ell);
        e11.set(0, 0, 1);
        let mut e12 = SymMatrix::zero(ell);
        e12.set(0, 1, 1);
        let mut both = e12.clone();
        both.set(0, 0, 1);
        Self::new(vec![SymMatrix::zero(ell), e11, e12, both], vec![1; 4])
    }

    pub fn support(&self) -> &[SymMatrix] {
        &self.support
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coefficients
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

/// Whether `Σ_S c_S · f(S) = 0` for every basis function of `code`.
pub fn dual_witness_check(code: &LinearCode, w: &DualWitness) -> Result<bool> {
    let f = &**code.field();
    let Some(basis) = code.basis() else {
        return Err(Error::LabelMismatch);
    };
    for s in &w.support {
        if s.ell() != code.ell() {
            return Err(Error::ShapeMismatch("witness point has the wrong size".into()));
        }
        if let Some(&bad) = s.upper().iter().find(|&&x| !f.contains(x)) {
            return Err(Error::ElementOutOfRange { value: bad, q: f.order() });
        }
    }
    for pair in basis {
        let mut acc = 0u32;
        for (s, &c) in w.support.iter().zip(&w.coefficients) {
            acc = f.add(acc, f.mul(c, pair.value(s, f)?));
        }
        if acc != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual weight distribution from a primal one, via Krawtchouk polynomials.
///
/// `primal[i]` counts codewords of weight `i`; `k` is the primal dimension.
pub fn macwilliams_transform(primal: &[u128], n: usize, q: u32, k: usize) -> Result<Vec<u128>> {
    let overflow = || Error::Unsupported("MacWilliams transform overflows i128".into());
    let q = q as i128;
    let size = q.checked_pow(k as u32).ok_or_else(overflow)?;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut total: i128 = 0;
        for (i, &a) in primal.iter().enumerate().take(n + 1) {
            if a == 0 {
                continue;
            }
            // K_j(i) = Σ_s (−1)^s (q−1)^{j−s} C(i,s) C(n−i, j−s)
            let mut kj: i128 = 0;
            for s in 0..=j.min(i) {
                if j - s > n - i {
                    continue;
                }
                let term = (q - 1)
                    .checked_pow((j - s) as u32)
                    .and_then(|x| x.checked_mul(binomial(i as u64, s as u64) as i128))
                    .and_then(|x| x.checked_mul(binomial((n - i) as u64, (j - s) as u64) as i128))
                    .ok_or_else(overflow)?;
                kj = if s % 2 == 0 { kj.checked_add(term) } else { kj.checked_sub(term) }.ok_or_else(overflow)?;
            }
            total = kj.checked_mul(a as i128).and_then(|x| x.checked_add(total)).ok_or_else(overflow)?;
        }
        if total < 0 || total % size != 0 {
            return Err(Error::Unsupported("primal histogram is not a linear code's".into()));
        }
        out.push((total / size) as u128);
    }
    Ok(out)
}

/// The dual code with a generator from the right nullspace.
pub fn dual_code(code: &LinearCode) -> Result<LinearCode> {
    let f = code.field().clone();
    let g = nullspace(code.generator(), code.len(), &f);
    if g.is_empty() {
        return Err(Error::EmptyResult);
    }
    LinearCode::from_generator(f, code.ell(), code.variant(), g)
}

/// Weight distribution of the dual, enumerated directly.
pub fn dual_weight_enumerator(code: &LinearCode, opts: SearchOptions) -> Result<WeightReport> {
    weight_enumerator(&dual_code(code)?, opts)
}
