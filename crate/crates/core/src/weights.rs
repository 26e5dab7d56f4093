//! Exhaustive minimum distance and weight enumerators.
//!
//! Messages are walked one projective point at a time: the first nonzero
//! coordinate (the lead) is 1 and the tail runs through a q-ary reflected
//! Gray code, so consecutive messages differ in exactly one coordinate and
//! each step updates the codeword by a single scaled generator row.
//!
//! The sequence of lines is split into contiguous rank ranges, one per
//! worker; results merge by minimum weight with ties going to the smaller
//! rank, so output does not depend on the worker count.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::linalg::rref;
use crate::symmetric::DEFAULT_BUDGET;

/// Cap on the size of the pre-scaled row table, in bytes.
const SCALED_TABLE_LIMIT: usize = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    pub budget: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: std::thread::available_parallelism().map_or(1, |n| n.get()), budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub ell: usize,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    /// Message vector over the generator rows attaining `d`.
    pub witness: Vec<u32>,
    /// Weight -> number of codewords; empty unless a full enumeration ran.
    #[serde(default)]
    pub histogram: BTreeMap<u64, u128>,
    pub exhaustive: bool,
    /// Number of codewords (projective lines for minimum distance) visited.
    pub enumerated: u128,
    pub workers: usize,
    pub elapsed_ms: u64,
}

impl WeightReport {
    /// Copy with timing zeroed, for reproducibility comparisons.
    pub fn normalized(&self) -> Self {
        WeightReport { elapsed_ms: 0, ..self.clone() }
    }
}

/// `(q^k − 1) / (q − 1)`.
pub fn projective_lines(k: usize, q: u32) -> u128 {
    let q = q as u128;
    (0..k).fold(0u128, |acc, _| acc.saturating_mul(q).saturating_add(1))
}

fn pow(q: u32, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// Message for the line at global `rank` in walk order.
pub fn message_for_rank(k: usize, q: u32, rank: u128) -> Vec<u32> {
    let mut msg = vec![0u32; k];
    let mut rest = rank;
    for lead in 0..k {
        let block = pow(q, k - 1 - lead);
        if rest < block {
            msg[lead] = 1;
            for (j, g) in gray_digits(rest, k - 1 - lead, q).into_iter().enumerate() {
                msg[lead + 1 + j] = g;
            }
            return msg;
        }
        rest -= block;
    }
    panic!("rank {rank} out of range for k = {k}, q = {q}");
}

/// Gray digits `g_j = (b_j − b_{j+1}) mod q` of `i`, least significant first.
fn gray_digits(i: u128, len: usize, q: u32) -> Vec<u32> {
    let mut b = Vec::with_capacity(len + 1);
    let mut x = i;
    for _ in 0..len {
        b.push((x % q as u128) as u32);
        x /= q as u128;
    }
    b.push(0);
    (0..len).map(|j| (b[j] + q - b[j + 1]) % q).collect()
}

/// Digit of the Gray code that changes between `i` and `i + 1`.
#[inline]
fn changing_digit(mut i: u128, q: u128) -> usize {
    let mut j = 0;
    while i % q == q - 1 {
        i /= q;
        j += 1;
    }
    j
}

trait Adder: Sync {
    fn add(&self, a: u8, b: u8) -> u8;
}

struct Xor;
impl Adder for Xor {
    #[inline(always)]
    fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }
}

struct PrimeAdd(u8);
impl Adder for PrimeAdd {
    #[inline(always)]
    fn add(&self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        let p = self.0 as u16;
        (if s >= p { s - p } else { s }) as u8
    }
}

struct TableAdd {
    q: usize,
    table: Vec<u8>,
}
impl Adder for TableAdd {
    #[inline(always)]
    fn add(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize * self.q + b as usize]
    }
}

/// Generator rows pre-multiplied by every scalar, as bytes.
struct Scaled {
    k: usize,
    q: usize,
    n: usize,
    data: Vec<u8>,
}

impl Scaled {
    fn new(rows: &[Vec<u32>], f: &GaloisField) -> Result<Self> {
        let q = f.order() as usize;
        if q > 256 {
            return Err(Error::Unsupported(format!("exhaustive search needs q <= 256, got {q}")));
        }
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let bytes = k.saturating_mul(q).saturating_mul(n);
        if bytes > SCALED_TABLE_LIMIT {
            return Err(Error::Unsupported(format!("scaled generator table of {bytes} bytes")));
        }
        let mut data = vec![0u8; bytes];
        for (r, row) in rows.iter().enumerate() {
            for d in 1..q {
                let out = &mut data[(r * q + d) * n..(r * q + d + 1) * n];
                for (o, &x) in out.iter_mut().zip(row) {
                    *o = f.mul(d as u32, x) as u8;
                }
            }
        }
        Ok(Scaled { k, q, n, data })
    }

    #[inline]
    fn row(&self, r: usize, d: u32) -> &[u8] {
        let start = (r * self.q + d as usize) * self.n;
        &self.data[start..start + self.n]
    }
}

#[derive(Clone, Debug, Default)]
struct Partial {
    best: Option<(u64, u128)>,
    histogram: Vec<u128>,
    visited: u128,
}

fn merge(parts: Vec<Partial>, n: usize) -> Partial {
    let mut out = Partial { best: None, histogram: vec![0; n + 1], visited: 0 };
    for p in parts {
        out.visited += p.visited;
        for (w, c) in p.histogram.iter().enumerate() {
            out.histogram[w] += c;
        }
        out.best = match (out.best, p.best) {
            (None, b) | (b, None) => b,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
    }
    out
}

/// Walks lines `[start, end)` of the global order.
fn walk_range<A: Adder>(
    adder: &A,
    scaled: &Scaled,
    f: &GaloisField,
    start: u128,
    end: u128,
    want_histogram: bool,
) -> Partial {
    let (k, n) = (scaled.k, scaled.n);
    let q = f.order();
    let mut part =
        Partial { best: None, histogram: if want_histogram { vec![0; n + 1] } else { Vec::new() }, visited: 0 };
    let mut word = vec![0u8; n];
    let mut block_start = 0u128;
    for lead in 0..k {
        let tail = k - 1 - lead;
        let block = pow(q, tail);
        let block_end = block_start + block;
        let lo = start.max(block_start);
        let hi = end.min(block_end);
        if lo < hi {
            let mut i = lo - block_start;
            let last = hi - block_start;
            let mut digits = gray_digits(i, tail, q);
            word.copy_from_slice(scaled.row(lead, 1));
            for (j, &g) in digits.iter().enumerate() {
                if g != 0 {
                    for (w, &s) in word.iter_mut().zip(scaled.row(lead + 1 + j, g)) {
                        *w = adder.add(*w, s);
                    }
                }
            }
            let mut weight = word.iter().filter(|&&x| x != 0).count() as u64;
            loop {
                let rank = block_start + i;
                if weight > 0 && part.best.is_none_or(|(bw, _)| weight < bw) {
                    part.best = Some((weight, rank));
                }
                if want_histogram {
                    part.histogram[weight as usize] += 1;
                }
                part.visited += 1;
                i += 1;
                if i == last {
                    break;
                }
                let j = changing_digit(i - 1, q as u128);
                let old = digits[j];
                let new = (old + 1) % q;
                digits[j] = new;
                let delta = f.sub(new, old);
                let srow = scaled.row(lead + 1 + j, delta);
                let mut nz = 0u64;
                for (w, &s) in word.iter_mut().zip(srow) {
                    let v = adder.add(*w, s);
                    *w = v;
                    nz += (v != 0) as u64;
                }
                weight = nz;
            }
        }
        block_start = block_end;
    }
    part
}

fn run_walk(rows: &[Vec<u32>], f: &GaloisField, lines: u128, workers: usize, histogram: bool) -> Result<Partial> {
    let scaled = Scaled::new(rows, f)?;
    let workers = workers.max(1).min(lines.max(1).min(usize::MAX as u128) as usize);
    let chunk = lines.div_ceil(workers as u128);
    let ranges: Vec<(u128, u128)> =
        (0..workers as u128).map(|w| ((w * chunk).min(lines), ((w + 1) * chunk).min(lines))).collect();
    let q = f.order();
    let run = |range: (u128, u128)| -> Partial {
        let (s, e) = range;
        if f.characteristic() == 2 {
            walk_range(&Xor, &scaled, f, s, e, histogram)
        } else if f.degree() == 1 {
            walk_range(&PrimeAdd(q as u8), &scaled, f, s, e, histogram)
        } else {
            let qs = q as usize;
            let mut table = vec![0u8; qs * qs];
            for a in 0..qs {
                for b in 0..qs {
                    table[a * qs + b] = f.add(a as u32, b as u32) as u8;
                }
            }
            walk_range(&TableAdd { q: qs, table }, &scaled, f, s, e, histogram)
        }
    };
    let parts: Vec<Partial> = if workers == 1 {
        vec![run(ranges[0])]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges.iter().map(|&r| scope.spawn(move || run(r))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    Ok(merge(parts, rows.first().map_or(0, Vec::len)))
}

/// Exact minimum nonzero weight, by visiting one message per projective line.
pub fn min_distance_exhaustive(code: &LinearCode, opts: SearchOptions) -> Result<WeightReport> {
    let started = Instant::now();
    let f = &**code.field();
    let (k, n, q) = (code.rows(), code.len(), f.order());
    let lines = projective_lines(k, q);
    let required = lines.saturating_mul(n as u128);
    if required > opts.budget {
        return Err(Error::BudgetExceeded { required, budget: opts.budget });
    }
    let part = run_walk(code.generator(), f, lines, opts.workers, false)?;
    let (d, rank) = part.best.ok_or(Error::EmptyResult)?;
    Ok(WeightReport {
        ell: code.ell(),
        q,
        n,
        k: code.dimension(),
        d,
        witness: message_for_rank(k, q, rank),
        histogram: BTreeMap::new(),
        exhaustive: true,
        enumerated: part.visited,
        workers: opts.workers.max(1),
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Full weight distribution over all `q^k` codewords.
pub fn weight_enumerator(code: &LinearCode, opts: SearchOptions) -> Result<WeightReport> {
    let started = Instant::now();
    let f = &**code.field();
    let (n, q) = (code.len(), f.order());
    let reduced = rref(code.generator(), f);
    let k = reduced.rank();
    let required = pow(q, k).saturating_mul(n as u128);
    if required > opts.budget {
        return Err(Error::BudgetExceeded { required, budget: opts.budget });
    }
    // Independent rows are needed so that every line is counted once.
    let independent = k == code.rows();
    let rows: &[Vec<u32>] = if independent { code.generator() } else { &reduced.rows };
    let lines = projective_lines(k, q);
    let part = run_walk(rows, f, lines, opts.workers, true)?;
    let mut histogram = BTreeMap::new();
    histogram.insert(0, 1);
    for (w, &c) in part.histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        *histogram.entry(w as u64).or_insert(0) += c * (q as u128 - 1);
    }
    let (d, rank) = part.best.ok_or(Error::EmptyResult)?;
    let mut witness = message_for_rank(k, q, rank);
    if !independent {
        witness = express_in_generator(code, &crate::linalg::vec_mat(&witness, rows, f))?;
    }
    Ok(WeightReport {
        ell: code.ell(),
        q,
        n,
        k,
        d,
        witness,
        histogram,
        exhaustive: true,
        enumerated: part.visited * (q as u128 - 1) + 1,
        workers: opts.workers.max(1),
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Some message over the original generator rows producing `word`.
fn express_in_generator(code: &LinearCode, word: &[u32]) -> Result<Vec<u32>> {
    let f = &**code.field();
    let k = code.rows();
    // Solve m · G = word over the transposed system [Gᵀ | word].
    let n = code.len();
    let system: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut r: Vec<u32> = code.generator().iter().map(|row| row[j]).collect();
            r.push(word[j]);
            r
        })
        .collect();
    let e = rref(&system, f);
    if e.pivots.contains(&k) {
        return Err(Error::NotInSpan);
    }
    let mut m = vec![0u32; k];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        m[p] = row[k];
    }
    Ok(m)
}
