//! Plain-text formats for matrices and generator matrices.
//!
//! Matrix: header `q p m ell`, then ℓ lines of ℓ entries.
//! Generator: header `q p m ell variant k n`, then k lines of n entries.
//! Entries are integer-encoded field elements separated by whitespace.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::code::{LinearCode, Variant};
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::symmetric::Matrix;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| Error::Parse { line, msg: format!("bad number '{t}'") }))
        .collect()
}

fn field_from_header(line: usize, q: u64, p: u32, m: u32) -> Result<GaloisField> {
    let f = GaloisField::new(p, m)?;
    if f.order() as u64 != q {
        return Err(Error::Parse { line, msg: format!("q = {q} but p^m = {}", f.order()) });
    }
    Ok(f)
}

fn entries_row(line: usize, s: &str, len: usize, f: &GaloisField) -> Result<Vec<u32>> {
    let row: Vec<u32> = parse_numbers(line, s)?;
    if row.len() != len {
        return Err(Error::Parse { line, msg: format!("expected {len} entries, found {}", row.len()) });
    }
    if let Some(&bad) = row.iter().find(|&&x| !f.contains(x)) {
        return Err(Error::Parse { line, msg: format!("entry {bad} is not in GF({})", f.order()) });
    }
    Ok(row)
}

pub fn format_matrix(f: &GaloisField, m: &Matrix) -> String {
    let mut out = format!("{} {} {} {}\n", f.order(), f.characteristic(), f.degree(), m.size());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<(GaloisField, Matrix)> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let h: Vec<u64> = parse_numbers(hl, header)?;
    let [q, p, m, ell] = h[..] else {
        return Err(Error::Parse { line: hl, msg: "header must be `q p m ell`".into() });
    };
    let f = field_from_header(hl, q, p as u32, m as u32)?;
    let ell = ell as usize;
    let mut rows = Vec::with_capacity(ell);
    for _ in 0..ell {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: hl, msg: format!("expected {ell} rows") })?;
        rows.push(entries_row(ln, l, ell, &f)?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing data".into() });
    }
    Ok((f, Matrix::from_rows(&rows)?))
}

pub fn format_generator(code: &LinearCode) -> String {
    let f = code.field();
    let mut out = format!(
        "{} {} {} {} {} {} {}\n",
        f.order(),
        f.characteristic(),
        f.degree(),
        code.ell(),
        code.variant(),
        code.rows(),
        code.len()
    );
    for row in code.generator() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn parse_generator(text: &str) -> Result<LinearCode> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 7 {
        return Err(Error::Parse { line: hl, msg: "header must be `q p m ell variant k n`".into() });
    }
    let nums: Vec<u64> = parse_numbers(hl, &[parts[0], parts[1], parts[2], parts[3], parts[5], parts[6]].join(" "))?;
    let (q, p, m, ell, k, n) =
        (nums[0], nums[1] as u32, nums[2] as u32, nums[3] as usize, nums[4] as usize, nums[5] as usize);
    let variant: Variant = parts[4].parse().map_err(|e: Error| Error::Parse { line: hl, msg: e.to_string() })?;
    let f = field_from_header(hl, q, p, m)?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: hl, msg: format!("expected {k} rows") })?;
        rows.push(entries_row(ln, l, n, &f)?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing data".into() });
    }
    LinearCode::from_generator(Arc::new(f), ell, variant, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::DEFAULT_BUDGET;

    #[test]
    fn generator_roundtrip() {
        let f = Arc::new(GaloisField::from_order(4).unwrap());
        let c = LinearCode::build(2, f, Variant::Symplectic, DEFAULT_BUDGET).unwrap();
        let text = format_generator(&c);
        assert!(text.starts_with("4 2 2 2 symplectic 5 64\n"));
        let back = parse_generator(&text).unwrap();
        assert_eq!(back.generator(), c.generator());
        assert_eq!(back.basis(), c.basis());
    }

    #[test]
    fn matrix_roundtrip() {
        let f = GaloisField::from_order(9).unwrap();
        let m = Matrix::from_rows(&[vec![1, 8, 0], vec![8, 2, 3], vec![0, 3, 7]]).unwrap();
        let text = format_matrix(&f, &m);
        assert_eq!(text, "9 3 2 3\n1 8 0\n8 2 3\n0 3 7\n");
        let (g, back) = parse_matrix(&text).unwrap();
        assert_eq!((g, back), (f, m));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_matrix("4 2 2 2\n1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("3 3 1 2\n1 2\n0 5\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("6 2 1 1\n1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_generator("2 2 1 1 weird 2 2\n0 1\n1 1\n"), Err(Error::Parse { .. })));
    }
}
