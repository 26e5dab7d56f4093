//! Polynomials in the ℓ² entries of a generic matrix.
//!
//! Variables are ordered row-major: `X_{i,j} ≺ X_{i',j'}` iff `i < i'` or
//! `i = i'` and `j < j'`. Monomials are compared lexicographically starting
//! from the largest variable `X_{ℓ,ℓ}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::symmetric::{MinorPair, SquareEntries};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    ell: usize,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(ell: usize) -> Self {
        Monomial { ell, exps: vec![0; ell * ell] }
    }

    /// `X_{i,j}` (0-based).
    pub fn var(ell: usize, i: usize, j: usize) -> Self {
        let mut m = Self::one(ell);
        m.exps[i * ell + j] = 1;
        m
    }

    pub fn from_exponents(ell: usize, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != ell * ell {
            return Err(Error::ShapeMismatch(format!("{} exponents for ell = {ell}", exps.len())));
        }
        Ok(Monomial { ell, exps })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exps[i * self.ell + j]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { ell: self.ell, exps }
    }

    pub fn evaluate<M: SquareEntries>(&self, m: &M, f: &GaloisField) -> u32 {
        let ell = self.ell;
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(1, |acc, (v, &e)| f.mul(acc, f.pow(m.entry(v / ell, v % ell), e as u64)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.iter().rev().cmp(other.exps.iter().rev()).then(self.ell.cmp(&other.ell))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ell = self.ell;
        let factors: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let base = format!("X{},{}", v / ell + 1, v % ell + 1);
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ell: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(ell: usize) -> Self {
        Polynomial { ell, terms: BTreeMap::new() }
    }

    pub fn constant(ell: usize, c: u32) -> Self {
        let mut p = Self::zero(ell);
        if c != 0 {
            p.terms.insert(Monomial::one(ell), c);
        }
        p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: u32, f: &GaloisField) {
        if c == 0 {
            return;
        }
        let v = f.add(self.coefficient(&m), c);
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Polynomial, f: &GaloisField) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c, f);
        }
        out
    }

    pub fn scale(&self, c: u32, f: &GaloisField) -> Polynomial {
        let mut out = Self::zero(self.ell);
        for (m, a) in self.terms() {
            out.add_term(m.clone(), f.mul(a, c), f);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial, f: &GaloisField) -> Polynomial {
        let mut out = Self::zero(self.ell);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), f.mul(c1, c2), f);
            }
        }
        out
    }

    pub fn evaluate<M: SquareEntries>(&self, m: &M, f: &GaloisField) -> u32 {
        self.terms().fold(0, |acc, (mono, c)| f.add(acc, f.mul(c, mono.evaluate(m, f))))
    }

    /// Reduction modulo the symmetry relations and the field equations.
    ///
    /// `X_{j,i}` with `j > i` becomes `X_{i,j}`, then every positive exponent
    /// `e` becomes `((e - 1) mod (q - 1)) + 1`.
    pub fn normal_form(&self, f: &GaloisField) -> Polynomial {
        let ell = self.ell;
        let period = f.order() - 1;
        let mut out = Self::zero(ell);
        for (mono, c) in self.terms() {
            let mut exps = vec![0u32; ell * ell];
            for i in 0..ell {
                for j in 0..ell {
                    let (a, b) = if i <= j { (i, j) } else { (j, i) };
                    exps[a * ell + b] += mono.exps[i * ell + j];
                }
            }
            for e in exps.iter_mut().filter(|e| **e > 0) {
                *e = (*e - 1) % period + 1;
            }
            out.add_term(Monomial { ell, exps }, c, f);
        }
        out
    }

    /// The lex-largest monomial.
    pub fn leading_term(&self) -> Result<&Monomial> {
        self.terms.keys().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self) -> Result<u32> {
        self.terms.values().next_back().copied().ok_or(Error::ZeroPolynomial)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(m, &c)| if c == 1 { m.to_string() } else { format!("{c}*{m}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn inversions(perm: &[usize]) -> usize {
    perm.iter().enumerate().map(|(a, &x)| perm[a + 1..].iter().filter(|&&y| y < x).count()).sum()
}

/// Signed permutation expansion of `det_{I,J}` in all ℓ² variables, unreduced.
pub fn expand_to_polynomial(pair: &MinorPair, ell: usize, f: &GaloisField) -> Result<Polynomial> {
    if let Some(m) = pair.max_index() {
        if m >= ell {
            return Err(Error::IndexOutOfRange { index: m + 1, size: ell });
        }
    }
    let t = pair.size();
    let mut out = Polynomial::zero(ell);
    for sigma in (0..t).permutations(t) {
        let mut mono = Monomial::one(ell);
        for (a, &s) in sigma.iter().enumerate() {
            mono.exps[pair.rows()[a] * ell + pair.cols()[s]] += 1;
        }
        let sign = if inversions(&sigma).is_multiple_of(2) { 1 } else { f.neg(1) };
        out.add_term(mono, sign, f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::{doset_pairs, enumerate_symmetric, DEFAULT_BUDGET};

    fn pair(r: &[usize], c: &[usize]) -> MinorPair {
        MinorPair::one_based(r, c).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let f = GaloisField::from_order(3).unwrap();
        let p = expand_to_polynomial(&pair(&[1, 2], &[1, 2]), 2, &f).unwrap();
        let mut expected = Polynomial::zero(2);
        expected.add_term(Monomial::var(2, 0, 0).mul(&Monomial::var(2, 1, 1)), 1, &f);
        expected.add_term(Monomial::var(2, 0, 1).mul(&Monomial::var(2, 1, 0)), 2, &f);
        assert_eq!(p, expected);
        let x12 = expand_to_polynomial(&pair(&[1], &[2]), 2, &f).unwrap();
        assert_eq!(x12.to_string(), "X1,2");
        let one = expand_to_polynomial(&MinorPair::empty(), 2, &f).unwrap();
        assert_eq!(one, Polynomial::constant(2, 1));
    }

    #[test]
    fn normal_form_examples() {
        let f = GaloisField::from_order(3).unwrap();
        let mut x21 = Polynomial::zero(2);
        x21.add_term(Monomial::var(2, 1, 0), 1, &f);
        assert_eq!(x21.normal_form(&f).to_string(), "X1,2");
        for q in [2u64, 3, 4, 5] {
            let g = GaloisField::from_order(q).unwrap();
            let mut xq = Polynomial::zero(2);
            let mono = Monomial::from_exponents(2, vec![q as u32, 0, 0, 0]).unwrap();
            xq.add_term(mono, 1, &g);
            assert_eq!(xq.normal_form(&g).to_string(), "X1,1");
        }
        let det = expand_to_polynomial(&pair(&[1, 2], &[1, 2]), 2, &f).unwrap();
        assert_eq!(det.normal_form(&f).to_string(), "X1,1*X2,2 + 2*X1,2^2");
    }

    #[test]
    fn leading_term_examples() {
        let f = GaloisField::from_order(3).unwrap();
        let lt = |r: &[usize], c: &[usize], ell| {
            expand_to_polynomial(&pair(r, c), ell, &f).unwrap().leading_term().unwrap().to_string()
        };
        assert_eq!(lt(&[1, 2], &[1, 2], 2), "X1,1*X2,2");
        assert_eq!(lt(&[1], &[2], 2), "X1,2");
        assert_eq!(lt(&[1, 2], &[2, 3], 3), "X1,2*X2,3");
        assert_eq!(Polynomial::zero(2).leading_term(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn variable_order_is_row_major() {
        let vars: Vec<Monomial> = (0..3).flat_map(|i| (0..3).map(move |j| Monomial::var(3, i, j))).collect();
        assert!(vars.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn leading_terms_of_doset_minors_are_distinct() {
        let f = GaloisField::from_order(3).unwrap();
        for ell in 1..=4 {
            let mut seen = std::collections::HashSet::new();
            for p in doset_pairs(ell) {
                let nf = expand_to_polynomial(&p, ell, &f).unwrap().normal_form(&f);
                let lt = nf.leading_term().unwrap().clone();
                // The leading term is the diagonal product of the minor.
                let mut diag = Monomial::one(ell);
                for (&i, &j) in p.rows().iter().zip(p.cols()) {
                    diag = diag.mul(&Monomial::var(ell, i, j));
                }
                assert_eq!(lt, diag, "{p}");
                assert!(seen.insert(lt));
            }
        }
    }

    #[test]
    fn expansion_agrees_with_determinant() {
        for q in [2u64, 3] {
            let f = GaloisField::from_order(q).unwrap();
            let pairs = doset_pairs(3);
            let polys: Vec<Polynomial> =
                pairs.iter().map(|p| expand_to_polynomial(p, 3, &f).unwrap().normal_form(&f)).collect();
            for s in enumerate_symmetric(3, &f, DEFAULT_BUDGET).unwrap() {
                for (p, poly) in pairs.iter().zip(&polys) {
                    assert_eq!(poly.evaluate(&s, &f), p.value(&s, &f).unwrap());
                }
            }
        }
    }
}
