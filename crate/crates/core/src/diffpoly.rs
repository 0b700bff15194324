//! Differential polynomials `F_p{y_1, ..., y_n}` over `m` commuting
//! derivations.
//!
//! A polynomial is a sparse map from monomials in derivative variables
//! `θ y_i` to nonzero residues. Derivations act on variables by
//! `∂_t(θ y_i) = (θ + e_t) y_i` and extend by Leibniz.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hurwitz::{MultiIndex, TruncatedHurwitzSeries};

/// The derivative variable `θ y_var` (`var` is 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivativeVariable {
    pub var: usize,
    pub theta: MultiIndex,
}

impl DerivativeVariable {
    pub fn new(var: usize, theta: MultiIndex) -> Self {
        DerivativeVariable { var, theta }
    }

    /// The plain coordinate `y_var`.
    pub fn base(var: usize, m: usize) -> Self {
        DerivativeVariable {
            var,
            theta: MultiIndex::zero(m),
        }
    }

    pub fn ord(&self) -> u32 {
        self.theta.ord()
    }

    pub fn derive(&self, t: usize) -> Self {
        DerivativeVariable {
            var: self.var,
            theta: self.theta.add(&MultiIndex::unit(self.theta.len(), t)),
        }
    }

    /// All variables `θ y_i` with `ord θ <= max_ord`, canonical order.
    pub fn all_up_to(n: usize, m: usize, max_ord: u32) -> Vec<DerivativeVariable> {
        let thetas = MultiIndex::all_up_to(m, max_ord);
        (1..=n)
            .flat_map(|var| thetas.iter().map(move |t| DerivativeVariable::new(var, t.clone())))
            .collect()
    }
}

impl fmt::Display for DerivativeVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta.is_zero() {
            write!(f, "y{}", self.var)
        } else {
            write!(f, "D{}(y{})", self.theta, self.var)
        }
    }
}

/// A product of derivative variables with positive exponents, factors kept
/// sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffMonomial {
    factors: Vec<(DerivativeVariable, u32)>,
}

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial::default()
    }

    pub fn var(v: DerivativeVariable) -> Self {
        DiffMonomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn from_factors<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (DerivativeVariable, u32)>,
    {
        let mut map: BTreeMap<DerivativeVariable, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        DiffMonomial {
            factors: map.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[(DerivativeVariable, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn order(&self) -> u32 {
        self.factors.iter().map(|(v, _)| v.ord()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        DiffMonomial::from_factors(self.factors.iter().chain(&other.factors).cloned())
    }

    /// All monomials with factors from `vars` and total degree `<= max_degree`,
    /// in canonical order.
    pub fn all_up_to(vars: &[DerivativeVariable], max_degree: u32) -> Vec<DiffMonomial> {
        fn go(
            vars: &[DerivativeVariable],
            start: usize,
            left: u32,
            cur: &mut Vec<(DerivativeVariable, u32)>,
            out: &mut Vec<DiffMonomial>,
        ) {
            out.push(DiffMonomial::from_factors(cur.iter().cloned()));
            if left == 0 {
                return;
            }
            for i in start..vars.len() {
                // multiply by vars[i]; later factors only use index >= i
                match cur.last_mut() {
                    Some((v, e)) if *v == vars[i] => *e += 1,
                    _ => cur.push((vars[i].clone(), 1)),
                }
                go(vars, i, left - 1, cur, out);
                match cur.last_mut() {
                    Some((_, e)) if *e > 1 => *e -= 1,
                    _ => {
                        cur.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(vars, 0, max_degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A differential polynomial with `F_p` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffPolynomial {
    field: PrimeField,
    n: usize,
    m: usize,
    terms: BTreeMap<DiffMonomial, u32>,
}

impl DiffPolynomial {
    pub fn zero(field: PrimeField, n: usize, m: usize) -> Self {
        DiffPolynomial {
            field,
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, n: usize, m: usize, c: i64) -> Self {
        Self::monomial(field, n, m, DiffMonomial::one(), c)
    }

    pub fn monomial(field: PrimeField, n: usize, m: usize, mono: DiffMonomial, c: i64) -> Self {
        let mut p = Self::zero(field, n, m);
        p.add_term(mono, field.reduce(c));
        p
    }

    pub fn variable(field: PrimeField, n: usize, m: usize, v: DerivativeVariable) -> Self {
        Self::monomial(field, n, m, DiffMonomial::var(v), 1)
    }

    /// `θ y_var`.
    pub fn var_theta(field: PrimeField, n: usize, m: usize, var: usize, theta: &[u32]) -> Self {
        Self::variable(field, n, m, DerivativeVariable::new(var, MultiIndex::new(theta.to_vec())))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DiffMonomial, u32)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn coeff(&self, mono: &DiffMonomial) -> u32 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `ord θ` over all factors; 0 for constants.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(DiffMonomial::order).max().unwrap_or(0)
    }

    /// Largest total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(DiffMonomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: DiffMonomial, c: u32) {
        if c == 0 {
            return;
        }
        let k = self.field;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = k.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedField(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        if self.n != other.n || self.m != other.m {
            return Err(Error::ShapeMismatch(format!(
                "polynomials over (n={}, m={}) and (n={}, m={})",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (mono, &c) in &other.terms {
            out.add_term(mono.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.neg(*v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.field, self.n, self.m);
        for (mono, &v) in &self.terms {
            out.add_term(mono.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let k = self.field;
        let mut out = Self::zero(k, self.n, self.m);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.mul(b), k.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::constant(self.field, self.n, self.m, 1);
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

    /// `∂_t` by the Leibniz rule (`t` is 1-based).
    pub fn derive(&self, t: usize) -> Result<Self> {
        if t == 0 || t > self.m {
            return Err(Error::IndexOutOfRange(format!(
                "derivation {t} with m={}",
                self.m
            )));
        }
        let k = self.field;
        let mut out = Self::zero(k, self.n, self.m);
        for (mono, &c) in &self.terms {
            for (i, (v, e)) in mono.factors.iter().enumerate() {
                let coeff = k.mul(c, k.reduce_u64(*e as u64));
                if coeff == 0 {
                    continue;
                }
                let rest = mono.factors.iter().enumerate().map(|(j, (w, f))| {
                    if i == j {
                        (w.clone(), f - 1)
                    } else {
                        (w.clone(), *f)
                    }
                });
                let dm = DiffMonomial::from_factors(rest.chain(std::iter::once((v.derive(t), 1))));
                out.add_term(dm, coeff);
            }
        }
        Ok(out)
    }

    /// Applies the operator `θ`.
    pub fn apply_theta(&self, theta: &MultiIndex) -> Result<Self> {
        if theta.len() != self.m {
            return Err(Error::LengthMismatch(self.m, theta.len()));
        }
        let mut out = self.clone();
        for t in theta.as_word() {
            out = out.derive(t)?;
        }
        Ok(out)
    }

    /// Ring homomorphism extension of a variable assignment into polynomials
    /// over `(target_n, self.m)`.
    pub fn substitute<F>(&self, target_n: usize, mut image: F) -> Result<Self>
    where
        F: FnMut(&DerivativeVariable) -> Result<DiffPolynomial>,
    {
        let k = self.field;
        let mut cache: BTreeMap<DerivativeVariable, DiffPolynomial> = BTreeMap::new();
        let mut out = Self::zero(k, target_n, self.m);
        for (mono, &c) in &self.terms {
            let mut term = Self::constant(k, target_n, self.m, c as i64);
            for (v, e) in &mono.factors {
                if !cache.contains_key(v) {
                    let img = image(v)?;
                    if img.n != target_n || img.m != self.m || img.field != k {
                        return Err(Error::ShapeMismatch(format!("image of {v} has the wrong shape")));
                    }
                    cache.insert(v.clone(), img);
                }
                term = term.mul(&cache[v].pow(*e as u64))?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates at a point of truncated Hurwitz series. The result has
    /// precision `min precision - order(f)`.
    pub fn eval(&self, point: &[TruncatedHurwitzSeries]) -> Result<TruncatedHurwitzSeries> {
        if point.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.n
            )));
        }
        let k = self.field;
        for s in point {
            if s.field() != k {
                return Err(Error::MixedField(k.characteristic(), s.field().characteristic()));
            }
            if s.m() != self.m {
                return Err(Error::ShapeMismatch(format!("series with m={}, expected {}", s.m(), self.m)));
            }
        }
        let base = point.iter().map(|s| s.precision()).min().unwrap_or(0);
        let order = self.order();
        if order > base {
            return Err(Error::PrecisionExhausted(format!(
                "order {order} polynomial at a point of precision {base}"
            )));
        }
        let prec = base - order;
        let mut cache: BTreeMap<&DerivativeVariable, TruncatedHurwitzSeries> = BTreeMap::new();
        let mut acc = TruncatedHurwitzSeries::zero(k, self.m, prec);
        for (mono, &c) in &self.terms {
            let mut term = TruncatedHurwitzSeries::constant(k, self.m, prec, c as i64);
            for (v, e) in &mono.factors {
                if !cache.contains_key(v) {
                    let s = point[v.var - 1].apply_theta(&v.theta)?.truncate(prec);
                    cache.insert(v, s);
                }
                term = term.mul(&cache[v].pow(*e as u64))?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.truncate(prec))
    }

    /// Parses the textual grammar (see [`crate::parse`]).
    pub fn parse(text: &str, field: PrimeField, n: usize, m: usize) -> Result<Self> {
        crate::parse::parse_polynomial(text, field, n, m)
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (mono.is_one(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{mono}")?,
                (false, _) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}
