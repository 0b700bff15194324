//! Prefix-notation calculator over truncated Hurwitz series:
//! `p=2 m=1 N=3 mul (1+[1]) [1]`.
//!
//! Operators: `add a b`, `sub a b`, `mul a b`, `d a` (first derivation),
//! `d<t> a`, `pow a <e>`, `pi a`. Operands are sums of `c`, `[k]`,
//! `c*[k]` or `[k]=c`, optionally parenthesized.

use charp_diffalg::hurwitz::parse_index;
use charp_diffalg::{Error, MultiIndex, PrimeField, Result, TruncatedHurwitzSeries};

struct Calc<'a> {
    field: PrimeField,
    m: usize,
    precision: u32,
    tokens: &'a [String],
    pos: usize,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column: 1,
        message: msg.into(),
    }
}

impl Calc<'_> {
    fn next(&mut self) -> Result<&str> {
        let t = self
            .tokens
            .get(self.pos)
            .ok_or_else(|| usage("expression ended early"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<Value> {
        let tok = self.next()?.to_string();
        match tok.as_str() {
            "add" | "sub" | "mul" => {
                let a = self.series()?;
                let b = self.series()?;
                Ok(Value::Series(match tok.as_str() {
                    "add" => a.add(&b)?,
                    "sub" => a.sub(&b)?,
                    _ => a.mul(&b)?,
                }))
            }
            "pow" => {
                let a = self.series()?;
                let e = self.next()?;
                let e: u64 = e.parse().map_err(|_| usage(format!("bad exponent '{e}'")))?;
                Ok(Value::Series(a.pow(e)))
            }
            "pi" => Ok(Value::Scalar(self.series()?.pi().value())),
            d if d.starts_with('d') && d[1..].chars().all(|c| c.is_ascii_digit()) => {
                let t = if d.len() == 1 { 1 } else { d[1..].parse().map_err(|_| usage(format!("bad operator '{d}'")))? };
                Ok(Value::Series(self.series()?.derive(t)?))
            }
            _ => Ok(Value::Series(self.literal(&tok)?)),
        }
    }

    fn series(&mut self) -> Result<TruncatedHurwitzSeries> {
        match self.expr()? {
            Value::Series(s) => Ok(s),
            Value::Scalar(c) => Ok(TruncatedHurwitzSeries::constant(self.field, self.m, self.precision, c as i64)),
        }
    }

    fn literal(&self, tok: &str) -> Result<TruncatedHurwitzSeries> {
        let body = tok.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut current = String::new();
        let mut depth = 0;
        let mut flush = |current: &mut String, sign: i64| -> Result<()> {
            if !current.trim().is_empty() {
                let (k, c) = self.term(current.trim())?;
                terms.push((k, sign * c));
            }
            current.clear();
            Ok(())
        };
        for ch in body.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    current.push(ch);
                }
                ']' => {
                    depth -= 1;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    flush(&mut current, sign)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => current.push(ch),
            }
        }
        flush(&mut current, sign)?;
        TruncatedHurwitzSeries::from_terms(self.field, self.m, self.precision, terms)
    }

    fn term(&self, t: &str) -> Result<(MultiIndex, i64)> {
        let index = |s: &str| -> Result<MultiIndex> {
            let k = parse_index(s).ok_or_else(|| usage(format!("bad index '{s}'")))?;
            if k.len() != self.m {
                return Err(Error::LengthMismatch(self.m, k.len()));
            }
            Ok(k)
        };
        let coeff = |s: &str| -> Result<i64> { s.parse().map_err(|_| usage(format!("bad coefficient '{s}'"))) };
        if let Some((k, c)) = t.split_once('=') {
            return Ok((index(k.trim())?, coeff(c.trim())?));
        }
        if let Some((a, b)) = t.split_once('*') {
            let (a, b) = (a.trim(), b.trim());
            return if a.starts_with('[') { Ok((index(a)?, coeff(b)?)) } else { Ok((index(b)?, coeff(a)?)) };
        }
        if t.starts_with('[') {
            Ok((index(t)?, 1))
        } else {
            Ok((MultiIndex::zero(self.m), coeff(t)?))
        }
    }
}

enum Value {
    Series(TruncatedHurwitzSeries),
    Scalar(u32),
}

/// Evaluates the script; returns the printed result.
pub fn run(args: &[String]) -> Result<String> {
    let mut header = std::collections::BTreeMap::new();
    let mut pos = 0;
    while let Some((k, v)) = args.get(pos).and_then(|a| a.split_once('=')) {
        if !["p", "m", "N"].contains(&k) {
            break;
        }
        let v: u64 = v.parse().map_err(|_| usage(format!("bad value in '{}'", args[pos])))?;
        header.insert(k, v);
        pos += 1;
    }
    for k in ["p", "m", "N"] {
        if !header.contains_key(k) {
            return Err(usage(format!("missing {k}=")));
        }
    }
    let mut calc = Calc {
        field: PrimeField::new(header["p"])?,
        m: header["m"] as usize,
        precision: u32::try_from(header["N"]).map_err(|_| usage("precision too large"))?,
        tokens: &args[pos..],
        pos: 0,
    };
    let v = calc.expr()?;
    if calc.pos != calc.tokens.len() {
        return Err(usage(format!("unexpected '{}' after expression", calc.tokens[calc.pos])));
    }
    Ok(match v {
        Value::Series(s) => s.body(),
        Value::Scalar(c) => c.to_string(),
    })
}
