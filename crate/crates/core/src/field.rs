//! Arithmetic in GF(p^m) for small prime powers.
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! encoding, least significant first, are the coefficients of the element as
//! a polynomial modulo the defining modulus. This encoding is also the
//! canonical enumeration order of the field (0 first, then 1, ...).
//!
//! Multiplication goes through log/antilog tables built from a primitive
//! element; addition in odd characteristic uses a table when `q <= 256`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default upper bound on the field order accepted by [`GaloisField::new`].
pub const DEFAULT_ORDER_BOUND: u64 = 1 << 16;

const TABLE_ADD_LIMIT: u32 = 256;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, m))
}

/// A finite field GF(p^m), immutable after construction.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients `c_0..=c_m` of the monic modulus.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField").field("p", &self.p).field("m", &self.m).field("modulus", &self.modulus).finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// Builds GF(p^m) with the default order bound.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_bound(p, m, DEFAULT_ORDER_BOUND)
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q)?;
        Self::new(p, m)
    }

    pub fn with_bound(p: u32, m: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let out_of_range = || Error::DegreeOutOfRange { p, m, bound };
        if m == 0 {
            return Err(out_of_range());
        }
        let q = (p as u64).checked_pow(m).ok_or_else(out_of_range)?;
        if q > bound || q > u32::MAX as u64 {
            return Err(out_of_range());
        }
        let q = q as u32;
        let modulus = smallest_irreducible(p, m);

        let mut field =
            GaloisField { p, m, q, modulus, exp: Vec::new(), log: Vec::new(), neg: Vec::new(), add_table: None };
        field.neg = (0..q).map(|a| field.neg_slow(a)).collect();
        field.build_log_tables();
        if p != 2 && q <= TABLE_ADD_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_slow(a, b) as u16;
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| self.multiplicative_order_slow(g) == order)
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            exp[(i + order) as usize] = x;
            log[x as usize] = i;
            x = self.mul_slow(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    fn multiplicative_order_slow(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul_slow(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn encode_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode_digits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode_digits(&d)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.encode_digits(&prod)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement<'_>> {
        if value >= self.q {
            return Err(Error::ElementOutOfRange { value, q: self.q });
        }
        Ok(FieldElement { value, field: self })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize] as u32
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// Image of the element `n * 1` for an integer `n` (reduced mod p).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Roots of `x^2 + b x + c` found by enumerating the field.
    pub fn solve_quadratic(&self, b: u32, c: u32) -> Vec<u32> {
        self.elements().filter(|&x| self.add(self.add(self.mul(x, x), self.mul(b, x)), c) == 0).collect()
    }

    /// Byte-sized addition and multiplication tables, available for `q <= 256`.
    pub fn byte_tables(&self) -> Option<ByteTables> {
        if self.q > 256 {
            return None;
        }
        let q = self.q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add(a as u32, b as u32) as u8;
                mul[a * q + b] = self.mul(a as u32, b as u32) as u8;
            }
        }
        Some(ByteTables { q, add, mul })
    }
}

/// Dense lookup tables for the inner loops of exhaustive searches.
#[derive(Debug, Clone)]
pub struct ByteTables {
    pub q: usize,
    pub add: Vec<u8>,
    pub mul: Vec<u8>,
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(m);
    prod.resize(m, 0);
    prod
}

/// Reduces `a` in place modulo a monic `modulus`.
fn poly_rem(a: &mut [u32], modulus: &[u32], p: u32) {
    let m = modulus.len() - 1;
    for top in (m..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (k, &mc) in modulus.iter().enumerate() {
            let idx = top - m + k;
            a[idx] = (a[idx] + (p - c) * mc) % p;
        }
    }
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    if m <= 1 {
        return true;
    }
    // A reducible polynomial has a monic factor of degree <= m/2.
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = lower;
            for _ in 0..d {
                divisor.push((x % p as u64) as u32);
                x /= p as u64;
            }
            divisor.push(1);
            let mut rem = poly.to_vec();
            poly_rem(&mut rem, &divisor, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Monic irreducible of degree `m` over GF(p) with the smallest integer encoding.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for lower in 0..count {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut x = lower;
        for _ in 0..m {
            poly.push((x % p as u64) as u32);
            x /= p as u64;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element tagged with the field it belongs to.
///
/// The operator impls panic when the operands come from different fields;
/// the `try_*` methods report [`Error::SpecMismatch`] instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    value: u32,
    field: &'f GaloisField,
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &'f GaloisField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElement { value, field: self.field }
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(self, other: Self) -> Result<Self> {
        self.check(&other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn inv(self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.check(other).is_ok()
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.q)
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<'f> Add for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl<'f> Sub for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self::Output {
        self.with(self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<GaloisField> {
        [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16].iter().map(|&q| GaloisField::from_order(q).unwrap()).collect()
    }

    #[test]
    fn construction() {
        let gf2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(gf2.order(), 2);
        let gf9 = GaloisField::new(3, 2).unwrap();
        assert_eq!(gf9.order(), 9);
        assert_eq!(GaloisField::new(4, 1), Err(Error::NonPrime(4)));
        assert!(matches!(GaloisField::new(2, 0), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(GaloisField::new(2, 17), Err(Error::DegreeOutOfRange { .. })));
        assert!(GaloisField::new(2, 16).is_ok());
        assert_eq!(GaloisField::from_order(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(GaloisField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn multiplication_examples() {
        let gf2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(gf2.mul(1, 1), 1);
        let gf3 = GaloisField::new(3, 1).unwrap();
        assert_eq!(gf3.mul(2, 2), 1);
        // GF(4) = GF(2)[x]/(x^2+x+1): x is encoded as 2, x+1 as 3.
        let gf4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(gf4.mul(2, 2), 3);
    }

    #[test]
    fn inverse_examples() {
        let gf3 = GaloisField::new(3, 1).unwrap();
        assert_eq!(gf3.inv(2), Ok(2));
        let gf5 = GaloisField::new(5, 1).unwrap();
        assert_eq!(gf5.inv(1), Ok(1));
        let gf2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(gf2.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn element_order() {
        let gf3 = GaloisField::new(3, 1).unwrap();
        assert_eq!(gf3.elements().collect::<Vec<_>>(), vec![0, 1, 2]);
        let gf4 = GaloisField::new(2, 2).unwrap();
        let e: Vec<u32> = gf4.elements().collect();
        assert_eq!(e.len(), 4);
        assert_eq!(&e[..2], &[0, 1]);
    }

    #[test]
    fn quadratic_examples() {
        let gf4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(gf4.solve_quadratic(0, 3), vec![2]);
        let gf3 = GaloisField::new(3, 1).unwrap();
        assert!(gf3.solve_quadratic(0, 1).is_empty());
        assert_eq!(gf3.solve_quadratic(2, 1), vec![2]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_bijection() {
        for f in small_fields() {
            let mut image: Vec<u32> = f.elements().map(|a| f.frobenius(a)).collect();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
            image.sort_unstable();
            assert_eq!(image, f.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn char2_quadratic_has_unique_root() {
        for q in [2u64, 4, 8, 16] {
            let f = GaloisField::from_order(q).unwrap();
            for c in f.elements() {
                assert_eq!(f.solve_quadratic(0, c).len(), 1, "q={q} c={c}");
            }
        }
    }

    #[test]
    fn quadratic_roots_are_exact() {
        for f in small_fields() {
            for b in f.elements() {
                for c in f.elements() {
                    let roots = f.solve_quadratic(b, c);
                    assert!(roots.len() <= 2);
                    for x in f.elements() {
                        let v = f.add(f.add(f.mul(x, x), f.mul(b, x)), c);
                        assert_eq!(v == 0, roots.contains(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn tagged_elements() {
        let gf3 = GaloisField::new(3, 1).unwrap();
        let gf5 = GaloisField::new(5, 1).unwrap();
        let a = gf3.element(2).unwrap();
        assert_eq!((a * a).value(), 1);
        assert_eq!((-a).value(), 1);
        assert_eq!(a.try_mul(gf5.element(2).unwrap()), Err(Error::SpecMismatch));
        assert_eq!(gf3.element(0).unwrap().inv(), Err(Error::DivisionByZero));
        assert!(gf3.element(3).is_err());
    }
}
