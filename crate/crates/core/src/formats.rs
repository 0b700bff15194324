//! Text formats for algebras and polynomial systems.
//!
//! Algebra files:
//!
//! ```text
//! # B2
//! p=2 dim=2 m=1
//! basis 1 eps
//! mul 0 0 = 1 0
//! mul 0 1 = 0 1
//! mul 1 1 = 0 0
//! D1 1 = 1 0
//! ```
//!
//! Basis indices are 0-based, derivations `D<t>` 1-based. Every unordered
//! pair needs a `mul` line; `D` rows left out are zero.
//!
//! System files: a header `p=<p> m=<m> n=<n> N=<N>` and one polynomial per
//! line.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::findim::FinDimDiffAlgebra;
use crate::geometry::System;
use crate::linalg::Vector;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated words with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, w)| (line[..byte].chars().count() + 1, w))
        .collect()
}

/// Meaningful lines with their 1-based numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

fn parse_header(line: usize, text: &str, keys: &[&str]) -> Result<BTreeMap<String, u64>> {
    let mut out = BTreeMap::new();
    for (col, w) in words(text) {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| syntax(line, col, format!("expected key=value, found '{w}'")))?;
        if !keys.contains(&k) {
            return Err(syntax(line, col, format!("unknown header key '{k}'")));
        }
        let v: u64 = v
            .parse()
            .map_err(|_| syntax(line, col + k.len() + 1, format!("'{v}' is not a natural number")))?;
        if out.insert(k.to_string(), v).is_some() {
            return Err(syntax(line, col, format!("repeated header key '{k}'")));
        }
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(syntax(line, 1, format!("header lacks '{k}='")));
        }
    }
    Ok(out)
}

fn parse_index(line: usize, (col, w): (usize, &str), below: usize, what: &str) -> Result<usize> {
    let i: usize = w
        .parse()
        .map_err(|_| syntax(line, col, format!("expected {what}, found '{w}'")))?;
    if i >= below {
        return Err(syntax(line, col, format!("{what} {i} out of range")));
    }
    Ok(i)
}

fn parse_vector(line: usize, items: &[(usize, &str)], d: usize, field: PrimeField) -> Result<Vector> {
    if items.len() != d {
        let col = items.first().map_or(1, |x| x.0);
        return Err(syntax(line, col, format!("expected {d} coefficients, found {}", items.len())));
    }
    items
        .iter()
        .map(|&(col, w)| {
            let v: i64 = w
                .parse()
                .map_err(|_| syntax(line, col, format!("'{w}' is not an integer")))?;
            Ok(field.reduce(v))
        })
        .collect()
}

fn expect_eq(line: usize, item: Option<&(usize, &str)>) -> Result<()> {
    match item {
        Some((_, "=")) => Ok(()),
        Some(&(col, w)) => Err(syntax(line, col, format!("expected '=', found '{w}'"))),
        None => Err(syntax(line, 1, "expected '='")),
    }
}

/// Parses an algebra file. The result is shape-checked but not validated.
pub fn parse_algebra(text: &str) -> Result<FinDimDiffAlgebra> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty algebra file"))?;
    let h = parse_header(hl, header, &["p", "dim", "m"])?;
    let field = PrimeField::new(h["p"]).map_err(|e| syntax(hl, 1, e.to_string()))?;
    let d = h["dim"] as usize;
    let m = h["m"] as usize;
    let mut names: Option<Vec<String>> = None;
    let mut mul: Vec<Vec<Option<Vector>>> = vec![vec![None; d]; d];
    let mut der = vec![vec![vec![0u32; d]; d]; m];
    for (ln, text) in lines {
        let w = words(text);
        let (col, head) = w[0];
        match head {
            "basis" => {
                if names.is_some() {
                    return Err(syntax(ln, col, "repeated basis line"));
                }
                if w.len() - 1 != d {
                    return Err(syntax(ln, col, format!("expected {d} basis names, found {}", w.len() - 1)));
                }
                names = Some(w[1..].iter().map(|(_, s)| s.to_string()).collect());
            }
            "mul" => {
                if w.len() < 4 {
                    return Err(syntax(ln, col, "expected 'mul i j = v...'"));
                }
                let i = parse_index(ln, w[1], d, "basis index")?;
                let j = parse_index(ln, w[2], d, "basis index")?;
                expect_eq(ln, w.get(3))?;
                let v = parse_vector(ln, &w[4..], d, field)?;
                for (a, b) in [(i, j), (j, i)] {
                    if mul[a][b].as_ref().is_some_and(|old| *old != v) {
                        return Err(syntax(ln, col, format!("conflicting products for ({i}, {j})")));
                    }
                    mul[a][b] = Some(v.clone());
                }
            }
            h if h.starts_with('D') => {
                let t = parse_index(ln, (col + 1, &h[1..]), m + 1, "derivation")?;
                if t == 0 {
                    return Err(syntax(ln, col + 1, "derivations are numbered from 1"));
                }
                if w.len() < 3 {
                    return Err(syntax(ln, col, "expected 'D<t> i = v...'"));
                }
                let i = parse_index(ln, w[1], d, "basis index")?;
                expect_eq(ln, w.get(2))?;
                der[t - 1][i] = parse_vector(ln, &w[3..], d, field)?;
            }
            other => return Err(syntax(ln, col, format!("unknown directive '{other}'"))),
        }
    }
    let names = names.unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
    let mut table = Vec::with_capacity(d);
    for (i, row) in mul.into_iter().enumerate() {
        let mut out = Vec::with_capacity(d);
        for (j, v) in row.into_iter().enumerate() {
            out.push(v.ok_or_else(|| syntax(hl, 1, format!("missing product 'mul {i} {j}'")))?);
        }
        table.push(out);
    }
    FinDimDiffAlgebra::new(field, names, table, der)
}

/// Writes an algebra in the format read by [`parse_algebra`].
pub fn write_algebra(a: &FinDimDiffAlgebra) -> String {
    let join = |v: &Vector| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("p={} dim={} m={}\n", a.field().characteristic(), a.dim(), a.m());
    out.push_str(&format!("basis {}\n", a.names().join(" ")));
    for i in 0..a.dim() {
        for j in i..a.dim() {
            out.push_str(&format!("mul {i} {j} = {}\n", join(&a.mul_table()[i][j])));
        }
    }
    for (t, rows) in a.derivation_matrices().iter().enumerate() {
        for (i, v) in rows.iter().enumerate() {
            if v.iter().any(|&x| x != 0) {
                out.push_str(&format!("D{} {i} = {}\n", t + 1, join(v)));
            }
        }
    }
    out
}

/// A parsed system file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub system: System,
    pub precision: u32,
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty system file"))?;
    let h = parse_header(hl, header, &["p", "m", "n", "N"])?;
    let field = PrimeField::new(h["p"]).map_err(|e| syntax(hl, 1, e.to_string()))?;
    let (m, n) = (h["m"] as usize, h["n"] as usize);
    let precision = u32::try_from(h["N"]).map_err(|_| syntax(hl, 1, "precision too large"))?;
    let mut polys = Vec::new();
    for (ln, text) in lines {
        let f = crate::diffpoly::DiffPolynomial::parse(text, field, n, m).map_err(|e| match e {
            Error::Syntax { column, message, .. } => syntax(ln, column, message),
            Error::UnknownVariable(v) => syntax(ln, 1, format!("unknown variable {v}")),
            Error::IndexOutOfRange(v) => syntax(ln, 1, v),
            other => other,
        })?;
        polys.push(f);
    }
    Ok(SystemFile {
        system: System::new(field, n, m, polys)?,
        precision,
    })
}

pub fn write_system(file: &SystemFile) -> String {
    let s = &file.system;
    let mut out = format!(
        "p={} m={} n={} N={}\n",
        s.field.characteristic(),
        s.m,
        s.n,
        file.precision
    );
    for f in &s.polys {
        out.push_str(&format!("{f}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const B2: &str = "# B2\np=2 dim=2 m=1\nbasis 1 eps\nmul 0 0 = 1 0\nmul 0 1 = 0 1\nmul 1 1 = 0 0\nD1 1 = 1 0\n";

    #[test]
    fn reads_b2() {
        let a = parse_algebra(B2).unwrap();
        assert!(a.same_structure(&fixtures::b2()));
        assert_eq!(a.names(), fixtures::b2().names());
    }

    #[test]
    fn round_trips() {
        for a in fixtures::suite() {
            let text = write_algebra(&a.algebra);
            assert_eq!(parse_algebra(&text).unwrap(), a.algebra, "{}", a.name);
        }
    }

    #[test]
    fn reports_locations() {
        let missing = B2.replace("mul 1 1 = 0 0\n", "");
        assert!(matches!(parse_algebra(&missing), Err(Error::Syntax { line: 2, .. })));
        let bad = B2.replace("mul 0 1 = 0 1", "mul 0 1 = 0 x");
        assert_eq!(
            parse_algebra(&bad).map_err(|e| match e {
                Error::Syntax { line, column, .. } => (line, column),
                _ => (0, 0),
            }),
            Err((5, 13))
        );
        let bad = B2.replace("D1 1", "D2 1");
        assert!(matches!(parse_algebra(&bad), Err(Error::Syntax { line: 7, column: 2, .. })));
        assert!(matches!(parse_algebra("p=4 dim=1 m=0\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_algebra("p=2 dim=1\n"), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn systems() {
        let f = parse_system("p=2 m=1 n=1 N=3\n# logistic\nD[1](y1) - y1\n").unwrap();
        assert_eq!(f.precision, 3);
        assert_eq!(f.system.polys.len(), 1);
        assert_eq!(parse_system(&write_system(&f)).unwrap(), f);
        assert!(matches!(
            parse_system("p=2 m=1 n=1 N=3\ny1\nD[1(y1)\n"),
            Err(Error::Syntax { line: 3, column: 4, .. })
        ));
        assert!(matches!(parse_system("p=2 m=1 n=1 N=3\ny2\n"), Err(Error::Syntax { line: 2, .. })));
    }
}
