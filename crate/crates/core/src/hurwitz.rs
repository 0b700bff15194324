//! Truncated Hurwitz series over `F_p` with `m` commuting shift derivations.
//!
//! A series is a sparse table `MultiIndex -> F_p` on the window
//! `ord(k) <= N`. The product is
//! `(fg)(k) = sum_{i <= k} C(k, i) f(i) g(k - i)` and the `t`-th derivation
//! shifts `f(k) -> f(k + e_t)`. The window is downward closed, so products
//! are exact at the shared precision, while a derivation needs one index
//! outside the window and costs one unit of precision.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{binomial_raw, FieldElement, PrimeField};

/// A derivative operator `θ = ∂_1^{k_1} ... ∂_m^{k_m}`, also used as a
/// coefficient index.
///
/// Ordered by total order first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    coords: Vec<u32>,
}

impl MultiIndex {
    pub fn new(coords: Vec<u32>) -> Self {
        MultiIndex { coords }
    }

    pub fn zero(m: usize) -> Self {
        MultiIndex { coords: vec![0; m] }
    }

    /// The unit index `e_t` for a 1-based derivation `t`.
    pub fn unit(m: usize, t: usize) -> Self {
        let mut coords = vec![0; m];
        coords[t - 1] = 1;
        MultiIndex { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn ord(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self - other`, or `None` unless `other <= self` coordinatewise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(MultiIndex { coords })
    }

    /// Coordinatewise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// All indices of length `m` with `ord <= max_ord`, in canonical order.
    pub fn all_up_to(m: usize, max_ord: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for ord in 0..=max_ord {
            let mut level = Vec::new();
            compositions(m, ord, &mut Vec::with_capacity(m), &mut level);
            level.sort();
            out.extend(level);
        }
        out
    }

    /// Number of indices of length `m` with `ord <= max_ord`: `C(max_ord + m, m)`.
    pub fn count_up_to(m: usize, max_ord: u32) -> u128 {
        let mut acc: u128 = 1;
        for i in 1..=m as u128 {
            acc = acc * (max_ord as u128 + i) / i;
        }
        acc
    }

    /// Splits `self` into a sequence of 1-based derivation indices.
    pub fn as_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.ord() as usize);
        for (t, &c) in self.coords.iter().enumerate() {
            word.extend(std::iter::repeat_n(t + 1, c as usize));
        }
        word
    }
}

fn compositions(m: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if prefix.len() + 1 == m {
        prefix.push(remaining);
        out.push(MultiIndex::new(prefix.clone()));
        prefix.pop();
        return;
    }
    if m == 0 {
        if remaining == 0 {
            out.push(MultiIndex::new(Vec::new()));
        }
        return;
    }
    for c in 0..=remaining {
        prefix.push(c);
        compositions(m, remaining - c, prefix, out);
        prefix.pop();
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord()
            .cmp(&other.ord())
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Result of a precision-aware comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    pub equal: bool,
    /// The precision at which `equal` was decided.
    pub precision: u32,
}

/// A Hurwitz series known on the window `ord(k) <= precision`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedHurwitzSeries {
    field: PrimeField,
    m: usize,
    precision: u32,
    coeffs: BTreeMap<MultiIndex, u32>,
}

impl TruncatedHurwitzSeries {
    pub fn zero(field: PrimeField, m: usize, precision: u32) -> Self {
        TruncatedHurwitzSeries {
            field,
            m,
            precision,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, m: usize, precision: u32, c: i64) -> Self {
        let mut s = Self::zero(field, m, precision);
        s.set(MultiIndex::zero(m), field.reduce(c));
        s
    }

    pub fn one(field: PrimeField, m: usize, precision: u32) -> Self {
        Self::constant(field, m, precision, 1)
    }

    /// The series `δ_k` with a single coefficient 1 at index `k`.
    pub fn delta(field: PrimeField, precision: u32, k: MultiIndex) -> Self {
        let m = k.len();
        let mut s = Self::zero(field, m, precision);
        s.set(k, 1);
        s
    }

    /// Builds a series from `(index, value)` pairs; indices beyond the window
    /// are dropped and repeated indices accumulate.
    pub fn from_terms<I>(field: PrimeField, m: usize, precision: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, i64)>,
    {
        let mut s = Self::zero(field, m, precision);
        for (k, v) in terms {
            if k.len() != m {
                return Err(Error::LengthMismatch(m, k.len()));
            }
            let cur = s.coeff(&k);
            s.set(k, field.add(cur, field.reduce(v)));
        }
        Ok(s)
    }

    /// Builds a dense series from values listed in canonical index order.
    pub fn from_dense(field: PrimeField, m: usize, precision: u32, values: &[u32]) -> Self {
        let mut s = Self::zero(field, m, precision);
        for (k, &v) in MultiIndex::all_up_to(m, precision).into_iter().zip(values) {
            s.set(k, field.reduce_u64(v as u64));
        }
        s
    }

    /// Coefficients in canonical index order, zeros included.
    pub fn to_dense(&self) -> Vec<u32> {
        MultiIndex::all_up_to(self.m, self.precision)
            .iter()
            .map(|k| self.coeff(k))
            .collect()
    }

    fn set(&mut self, k: MultiIndex, v: u32) {
        if k.ord() > self.precision {
            return;
        }
        if v == 0 {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeff(&self, k: &MultiIndex) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, u32)> {
        self.coeffs.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Forgets every coefficient above `precision`.
    pub fn truncate(&self, precision: u32) -> Self {
        let precision = precision.min(self.precision);
        TruncatedHurwitzSeries {
            field: self.field,
            m: self.m,
            precision,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.ord() <= precision)
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedField(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        if self.m != other.m {
            return Err(Error::ShapeMismatch(format!(
                "series with m={} and m={}",
                self.m, other.m
            )));
        }
        Ok(())
    }

    /// Compares on the common window `min(N_f, N_g)`.
    pub fn agrees_with(&self, other: &Self) -> Result<Agreement> {
        self.check_shape(other)?;
        let precision = self.precision.min(other.precision);
        let equal = self.truncate(precision).coeffs == other.truncate(precision).coeffs;
        Ok(Agreement { equal, precision })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let precision = self.precision.min(other.precision);
        let mut out = self.truncate(precision);
        for (k, &v) in &other.coeffs {
            let cur = out.coeff(k);
            out.set(k.clone(), self.field.add(cur, v));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = self.field.neg(*v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.field, self.m, self.precision);
        for (k, &v) in &self.coeffs {
            out.set(k.clone(), self.field.mul(v, c));
        }
        out
    }

    /// Hurwitz product at precision `min(N_f, N_g)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let precision = self.precision.min(other.precision);
        let k = self.field;
        let mut acc: BTreeMap<MultiIndex, u32> = BTreeMap::new();
        for (i, &a) in &self.coeffs {
            if i.ord() > precision {
                continue;
            }
            for (j, &b) in &other.coeffs {
                if i.ord() + j.ord() > precision {
                    continue;
                }
                let sum = i.add(j);
                let c = binomial_raw(&sum, i, k);
                if c == 0 {
                    continue;
                }
                let term = k.mul(c, k.mul(a, b));
                let e = acc.entry(sum).or_insert(0);
                *e = k.add(*e, term);
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(TruncatedHurwitzSeries {
            field: k,
            m: self.m,
            precision,
            coeffs: acc,
        })
    }

    /// Shift derivation `∂_t` (1-based); precision drops by one.
    pub fn derive(&self, t: usize) -> Result<Self> {
        if t == 0 || t > self.m {
            return Err(Error::IndexOutOfRange(format!(
                "derivation {t} with m={}",
                self.m
            )));
        }
        if self.precision == 0 {
            return Err(Error::PrecisionExhausted(
                "cannot differentiate a series of precision 0".into(),
            ));
        }
        let e = MultiIndex::unit(self.m, t);
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(k, &v)| k.checked_sub(&e).map(|j| (j, v)))
            .collect();
        Ok(TruncatedHurwitzSeries {
            field: self.field,
            m: self.m,
            precision: self.precision - 1,
            coeffs,
        })
    }

    /// Applies `θ` as a composition of shift derivations.
    pub fn apply_theta(&self, theta: &MultiIndex) -> Result<Self> {
        if theta.len() != self.m {
            return Err(Error::LengthMismatch(self.m, theta.len()));
        }
        if theta.ord() > self.precision {
            return Err(Error::PrecisionExhausted(format!(
                "operator {theta} needs precision {}, series has {}",
                theta.ord(),
                self.precision
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(k, &v)| k.checked_sub(theta).map(|j| (j, v)))
            .collect();
        Ok(TruncatedHurwitzSeries {
            field: self.field,
            m: self.m,
            precision: self.precision - theta.ord(),
            coeffs,
        })
    }

    /// The free term `π(f) = f(0)`.
    pub fn pi(&self) -> FieldElement {
        self.field.element(self.coeff(&MultiIndex::zero(self.m)) as i64)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.field, self.m, self.precision);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// `f^p` by repeated Hurwitz multiplication.
    pub fn pth_power(&self) -> Self {
        let p = self.field.characteristic();
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    /// Renders the coefficient part only: `[k]=v ...`, or `0`.
    pub fn body(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(" ")
    }

    /// Parses `p=<p> m=<m> N=<N> : [k]=v ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, body) = text.split_once(':').ok_or_else(|| Error::Syntax {
            line: 1,
            column: text.len() + 1,
            message: "expected ':' after the header".into(),
        })?;
        let (mut p, mut m, mut n) = (None, None, None);
        for tok in head.split_whitespace() {
            let (key, val) = tok.split_once('=').ok_or_else(|| syntax_at(text, tok, "expected key=value"))?;
            let val: u64 = val
                .parse()
                .map_err(|_| syntax_at(text, tok, "expected a natural number"))?;
            match key {
                "p" => p = Some(val),
                "m" => m = Some(val as usize),
                "N" => n = Some(val as u32),
                _ => return Err(syntax_at(text, tok, "unknown header key")),
            }
        }
        let missing = |what: &str| Error::Syntax {
            line: 1,
            column: 1,
            message: format!("header is missing {what}"),
        };
        let field = PrimeField::new(p.ok_or_else(|| missing("p"))?)?;
        let m = m.ok_or_else(|| missing("m"))?;
        let n = n.ok_or_else(|| missing("N"))?;
        let mut terms = Vec::new();
        for tok in body.split_whitespace() {
            let (idx, val) = tok
                .split_once('=')
                .ok_or_else(|| syntax_at(text, tok, "expected [index]=value"))?;
            let idx = parse_index(idx).ok_or_else(|| syntax_at(text, tok, "malformed index"))?;
            if idx.len() != m {
                return Err(Error::IndexOutOfRange(format!("index {idx} has length {}, expected {m}", idx.len())));
            }
            if idx.ord() > n {
                return Err(Error::IndexOutOfRange(format!("index {idx} exceeds precision {n}")));
            }
            let v: i64 = val.parse().map_err(|_| syntax_at(text, tok, "malformed coefficient"))?;
            terms.push((idx, v));
        }
        Self::from_terms(field, m, n, terms)
    }
}

fn syntax_at(text: &str, tok: &str, message: &str) -> Error {
    let offset = tok.as_ptr() as usize - text.as_ptr() as usize;
    Error::Syntax {
        line: 1,
        column: offset + 1,
        message: message.to_string(),
    }
}

/// Parses `[a,b,...]` into a multi-index.
pub fn parse_index(s: &str) -> Option<MultiIndex> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<u32>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some(MultiIndex::new(coords))
}

impl fmt::Display for TruncatedHurwitzSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} m={} N={} :",
            self.field.characteristic(),
            self.m,
            self.precision
        )?;
        for (k, v) in &self.coeffs {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn d(field: PrimeField, n: u32, idx: &[u32]) -> TruncatedHurwitzSeries {
        TruncatedHurwitzSeries::delta(field, n, MultiIndex::new(idx.to_vec()))
    }

    /// Dense convolution oracle written directly from the product formula.
    fn convolution(f: &TruncatedHurwitzSeries, g: &TruncatedHurwitzSeries) -> Vec<u32> {
        let field = f.field();
        let n = f.precision().min(g.precision());
        MultiIndex::all_up_to(f.m(), n)
            .iter()
            .map(|kk| {
                let mut acc = 0u32;
                for i in MultiIndex::all_up_to(f.m(), kk.ord()) {
                    if let Some(j) = kk.checked_sub(&i) {
                        let mut c = 1u64;
                        for (a, b) in kk.coords().iter().zip(i.coords()) {
                            // exact binomial for small arguments
                            let mut num = 1u128;
                            for t in 0..*b as u128 {
                                num = num * (*a as u128 - t) / (t + 1);
                            }
                            c *= (num % field.characteristic() as u128) as u64;
                        }
                        let c = field.reduce_u64(c);
                        acc = field.add(acc, field.mul(c, field.mul(f.coeff(&i), g.coeff(&j))));
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn canonical_index_order() {
        let all = MultiIndex::all_up_to(2, 2);
        let rendered: Vec<String> = all.iter().map(|i| i.to_string()).collect();
        assert_eq!(rendered, ["[0,0]", "[0,1]", "[1,0]", "[0,2]", "[1,1]", "[2,0]"]);
        assert_eq!(MultiIndex::count_up_to(2, 2), 6);
        assert_eq!(MultiIndex::count_up_to(1, 3), 4);
        assert_eq!(MultiIndex::count_up_to(3, 4), 35);
    }

    #[test]
    fn addition_examples() {
        let f2 = k(2);
        let one = TruncatedHurwitzSeries::one(f2, 1, 3);
        let d1 = d(f2, 3, &[1]);
        let s = one.add(&d1).unwrap().add(&d1).unwrap();
        assert_eq!(s, one);
        let f5 = k(5);
        let f = TruncatedHurwitzSeries::from_dense(f5, 1, 4, &[1, 2, 3, 4, 0]);
        let z = f.add(&f.neg()).unwrap();
        assert!(z.is_zero());
        let g = TruncatedHurwitzSeries::zero(f5, 1, 2);
        let h = f.add(&g).unwrap();
        assert_eq!(h.precision(), 2);
        assert!(h.agrees_with(&f).unwrap().equal);
    }

    #[test]
    fn multiplication_examples() {
        let f2 = k(2);
        let one = TruncatedHurwitzSeries::one(f2, 1, 3);
        let d1 = d(f2, 3, &[1]);
        let prod = one.add(&d1).unwrap().mul(&d1).unwrap();
        assert_eq!(prod, d1);
        assert_eq!(prod.to_dense(), convolution(&one.add(&d1).unwrap(), &d1));
        assert!(d1.mul(&d1).unwrap().is_zero());
        let f = TruncatedHurwitzSeries::from_dense(f2, 1, 3, &[1, 0, 1, 1]);
        assert_eq!(f.mul(&one).unwrap(), f);
    }

    #[test]
    fn derivation_examples() {
        let f2 = k(2);
        assert_eq!(d(f2, 3, &[2]).derive(1).unwrap(), d(f2, 2, &[1]));
        let c = TruncatedHurwitzSeries::constant(f2, 1, 3, 1);
        assert!(c.derive(1).unwrap().is_zero());
        assert!(matches!(
            TruncatedHurwitzSeries::one(f2, 1, 0).derive(1),
            Err(Error::PrecisionExhausted(_))
        ));
        assert!(matches!(c.derive(2), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn free_term() {
        let f2 = k(2);
        let one = TruncatedHurwitzSeries::one(f2, 1, 3);
        let d1 = d(f2, 3, &[1]);
        assert_eq!(one.add(&d1).unwrap().pi().value(), 1);
        assert_eq!(d1.pi().value(), 0);
    }

    #[test]
    fn pth_power_examples() {
        let f2 = k(2);
        let f = d(f2, 4, &[1]).add(&d(f2, 4, &[2])).unwrap();
        assert!(f.pth_power().is_zero());
        assert_eq!(f.mul(&f).unwrap().to_dense(), convolution(&f, &f));
        let f3 = k(3);
        assert!(d(f3, 5, &[1]).pth_power().is_zero());
        let one = TruncatedHurwitzSeries::one(f3, 2, 4);
        assert_eq!(one.pth_power(), one);
    }

    #[test]
    fn text_form() {
        let s = TruncatedHurwitzSeries::parse("p=2 m=1 N=3 : [0]=1 [1]=1").unwrap();
        assert_eq!(s.to_string(), "p=2 m=1 N=3 : [0]=1 [1]=1");
        let z = TruncatedHurwitzSeries::parse("p=3 m=2 N=2 :").unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "p=3 m=2 N=2 :");
        let t = TruncatedHurwitzSeries::parse("p=5 m=2 N=2 : [1,0]=7 [0,0]=-1").unwrap();
        assert_eq!(t.to_string(), "p=5 m=2 N=2 : [0,0]=4 [1,0]=2");
        assert!(matches!(
            TruncatedHurwitzSeries::parse("p=2 m=1 N=3 [0]=1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            TruncatedHurwitzSeries::parse("p=2 m=1 N=1 : [2]=1"),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            TruncatedHurwitzSeries::parse("p=4 m=1 N=1 :"),
            Err(Error::NotPrime(4))
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub(crate) fn series(field: PrimeField, m: usize, n: u32) -> impl Strategy<Value = TruncatedHurwitzSeries> {
            let len = MultiIndex::count_up_to(m, n) as usize;
            proptest::collection::vec(0..field.characteristic(), len)
                .prop_map(move |v| TruncatedHurwitzSeries::from_dense(field, m, n, &v))
        }

        fn shape() -> impl Strategy<Value = (PrimeField, usize, u32)> {
            (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=2, 1u32..=6)
                .prop_map(|(p, m, n)| (PrimeField::new(p).unwrap(), m, n))
        }

        fn triple() -> impl Strategy<Value = [TruncatedHurwitzSeries; 3]> {
            shape().prop_flat_map(|(k, m, n)| {
                (series(k, m, n), series(k, m, n), series(k, m, n)).prop_map(|(a, b, c)| [a, b, c])
            })
        }

        proptest! {
            #[test]
            fn product_matches_convolution([f, g, _h] in triple()) {
                prop_assert_eq!(f.mul(&g).unwrap().to_dense(), convolution(&f, &g));
            }

            #[test]
            fn ring_axioms([f, g, h] in triple()) {
                prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
                prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
                prop_assert_eq!(
                    f.mul(&g.add(&h).unwrap()).unwrap(),
                    f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
                );
            }

            #[test]
            fn leibniz_and_commutation([f, g, _h] in triple()) {
                for t in 1..=f.m() {
                    let lhs = f.mul(&g).unwrap().derive(t).unwrap();
                    let rhs = f.derive(t).unwrap().mul(&g).unwrap()
                        .add(&f.mul(&g.derive(t).unwrap()).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
                if f.m() == 2 && f.precision() >= 2 {
                    let a = f.derive(1).unwrap().derive(2).unwrap();
                    let b = f.derive(2).unwrap().derive(1).unwrap();
                    prop_assert_eq!(a, b);
                }
            }

            #[test]
            fn pi_is_multiplicative([f, g, _h] in triple()) {
                let lhs = f.mul(&g).unwrap().pi();
                prop_assert_eq!(lhs, f.pi().try_mul(g.pi()).unwrap());
            }

            #[test]
            fn frobenius_vanishing([f, _g, _h] in triple()) {
                let f1 = f.sub(&TruncatedHurwitzSeries::constant(f.field(), f.m(), f.precision(), f.pi().value() as i64)).unwrap();
                prop_assert!(f1.pth_power().is_zero());
            }

            #[test]
            fn coefficients_are_iterated_derivatives([f, _g, _h] in triple()) {
                for kk in MultiIndex::all_up_to(f.m(), f.precision()) {
                    let mut s = f.clone();
                    for t in kk.as_word() {
                        s = s.derive(t).unwrap();
                    }
                    prop_assert_eq!(s.pi().value(), f.coeff(&kk));
                }
            }

            #[test]
            fn text_round_trip([f, _g, _h] in triple()) {
                let text = f.to_string();
                let back = TruncatedHurwitzSeries::parse(&text).unwrap();
                prop_assert_eq!(&back, &f);
                prop_assert_eq!(back.to_string(), text);
            }
        }
    }
}
