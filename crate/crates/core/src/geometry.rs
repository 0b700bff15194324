//! Zero sets of differential polynomial systems over truncated Hurwitz
//! points, vanishing ideals of finite point sets, regular maps and the
//! dimension profile `ω(t)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::bounds::Bounds;
use crate::diffpoly::{DerivativeVariable, DiffMonomial, DiffPolynomial};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hurwitz::{MultiIndex, TruncatedHurwitzSeries};
use crate::linalg::{self, count_vectors, AllVectors, Subspace, Vector};
use crate::report::{Report, ReportLine};

/// A point of `Q^n`: `n` series of common field, `m` and precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HurwitzPoint {
    coords: Vec<TruncatedHurwitzSeries>,
}

impl HurwitzPoint {
    pub fn new(coords: Vec<TruncatedHurwitzSeries>) -> Result<Self> {
        if let Some(first) = coords.first() {
            for c in &coords[1..] {
                if c.field() != first.field() {
                    return Err(Error::MixedField(first.field().characteristic(), c.field().characteristic()));
                }
                if c.m() != first.m() || c.precision() != first.precision() {
                    return Err(Error::ShapeMismatch("point coordinates differ in m or precision".into()));
                }
            }
        }
        Ok(HurwitzPoint { coords })
    }

    /// Reads coordinate-major dense coefficient tables.
    pub fn from_dense(field: PrimeField, n: usize, m: usize, precision: u32, values: &[u32]) -> Self {
        let width = MultiIndex::count_up_to(m, precision) as usize;
        let coords = (0..n)
            .map(|i| TruncatedHurwitzSeries::from_dense(field, m, precision, &values[i * width..(i + 1) * width]))
            .collect();
        HurwitzPoint { coords }
    }

    pub fn zero(field: PrimeField, n: usize, m: usize, precision: u32) -> Self {
        HurwitzPoint {
            coords: vec![TruncatedHurwitzSeries::zero(field, m, precision); n],
        }
    }

    pub fn coords(&self) -> &[TruncatedHurwitzSeries] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn precision(&self) -> u32 {
        self.coords.first().map_or(0, |c| c.precision())
    }

    pub fn to_dense(&self) -> Vec<u32> {
        self.coords.iter().flat_map(|c| c.to_dense()).collect()
    }

    pub fn truncate(&self, precision: u32) -> Self {
        HurwitzPoint {
            coords: self.coords.iter().map(|c| c.truncate(precision)).collect(),
        }
    }
}

impl fmt::Display for HurwitzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ;")?;
            }
            for k in MultiIndex::all_up_to(c.m(), c.precision()) {
                write!(f, " {k}={}", c.coeff(&k))?;
            }
        }
        write!(f, " )")
    }
}

/// A finite set of differential polynomials in `n` variables over `F_p`
/// with `m` derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub field: PrimeField,
    pub n: usize,
    pub m: usize,
    pub polys: Vec<DiffPolynomial>,
}

impl System {
    pub fn new(field: PrimeField, n: usize, m: usize, polys: Vec<DiffPolynomial>) -> Result<Self> {
        for f in &polys {
            if f.field() != field {
                return Err(Error::MixedField(field.characteristic(), f.field().characteristic()));
            }
            if f.n() != n || f.m() != m {
                return Err(Error::ShapeMismatch(format!("polynomial {f} is not in n={n} m={m}")));
            }
        }
        Ok(System { field, n, m, polys })
    }

    pub fn parse_lines<'a>(field: PrimeField, n: usize, m: usize, lines: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let polys = lines
            .into_iter()
            .map(|l| DiffPolynomial::parse(l, field, n, m))
            .collect::<Result<Vec<_>>>()?;
        System::new(field, n, m, polys)
    }

    /// Every polynomial evaluates to the zero series at its evaluation precision.
    pub fn is_satisfied_by(&self, x: &HurwitzPoint) -> Result<bool> {
        for f in &self.polys {
            if !f.eval(x.coords())?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Enumeration,
    Recurrence,
}

/// All solutions of a system among points of a fixed precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub precision: u32,
    pub points: Vec<HurwitzPoint>,
    pub method: SearchMethod,
    /// Size of the search domain, `q^(n · #{k : ord k ≤ N})`.
    pub domain: u128,
}

impl SolutionSet {
    /// `SOLUTIONS <count>` followed by one point per line.
    pub fn lines(&self) -> Vec<String> {
        std::iter::once(format!("SOLUTIONS {}", self.points.len()))
            .chain(self.points.iter().map(HurwitzPoint::to_string))
            .collect()
    }
}

/// Recurrence fast path is cross-checked against enumeration up to this
/// domain size.
pub const CROSS_CHECK_LIMIT: u128 = 1 << 16;

pub fn search_domain(system: &System, precision: u32) -> u128 {
    let width = MultiIndex::count_up_to(system.m, precision);
    let len = (system.n as u128).saturating_mul(width);
    count_vectors(system.field, usize::try_from(len).unwrap_or(usize::MAX))
}

/// Finds every point of precision `N` on which the system vanishes.
pub fn solve_system(system: &System, precision: u32, bound: u128) -> Result<SolutionSet> {
    if let Some(f) = system.polys.iter().find(|f| f.order() > precision) {
        return Err(Error::PrecisionExhausted(format!(
            "{f} has order {} above precision {precision}",
            f.order()
        )));
    }
    let domain = search_domain(system, precision);
    if domain > bound {
        return Err(Error::SearchSpaceTooLarge { size: domain, bound });
    }
    if let Some(rec) = recurrence_form(system) {
        let points = solve_by_recurrence(system, &rec, precision);
        if domain <= CROSS_CHECK_LIMIT {
            let enumerated = enumerate_solutions(system, precision)?;
            if enumerated != points {
                return Err(Error::CrossCheckFailed(format!(
                    "recurrence found {} points, enumeration {}",
                    points.len(),
                    enumerated.len()
                )));
            }
        }
        return Ok(SolutionSet {
            precision,
            points,
            method: SearchMethod::Recurrence,
            domain,
        });
    }
    Ok(SolutionSet {
        precision,
        points: enumerate_solutions(system, precision)?,
        method: SearchMethod::Enumeration,
        domain,
    })
}

/// Exhaustive search in lexicographic order of coefficient tables.
pub fn enumerate_solutions(system: &System, precision: u32) -> Result<Vec<HurwitzPoint>> {
    let width = MultiIndex::count_up_to(system.m, precision) as usize;
    let mut out = Vec::new();
    for v in AllVectors::new(system.field, system.n * width) {
        let x = HurwitzPoint::from_dense(system.field, system.n, system.m, precision, &v);
        if system.is_satisfied_by(&x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// `y_i' = c + Σ_j a_j y_j`, for `m = 1`.
#[derive(Debug, Clone)]
struct Recurrence {
    /// `rules[i] = Some((c, a))` when variable `i` has an equation.
    rules: Vec<Option<(u32, Vec<u32>)>>,
}

/// Recognizes systems whose polynomials are each `D[1](y_i) - (affine form
/// in y_1..y_n)`, with distinct heads, over one derivation.
fn recurrence_form(system: &System) -> Option<Recurrence> {
    if system.m != 1 {
        return None;
    }
    let k = system.field;
    let mut rules: Vec<Option<(u32, Vec<u32>)>> = vec![None; system.n];
    for f in &system.polys {
        let mut head = None;
        let mut c = 0;
        let mut a = vec![0; system.n];
        for (mono, coeff) in f.terms() {
            match mono.factors() {
                [] => c = k.neg(coeff),
                [(v, 1)] if v.theta.ord() == 0 => a[v.var - 1] = k.neg(coeff),
                [(v, 1)] if v.theta.ord() == 1 && coeff == 1 && head.is_none() => head = Some(v.var - 1),
                _ => return None,
            }
        }
        let i = head?;
        if rules[i].is_some() {
            return None;
        }
        rules[i] = Some((c, a));
    }
    Some(Recurrence { rules })
}

fn solve_by_recurrence(system: &System, rec: &Recurrence, precision: u32) -> Vec<HurwitzPoint> {
    let k = system.field;
    let n = system.n;
    let len = precision as usize + 1;
    // free parameters: a_0 of headed variables, every coefficient otherwise
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| {
            let upto = if rec.rules[i].is_some() { 1 } else { len };
            (0..upto).map(move |j| (i, j))
        })
        .collect();
    let mut points = Vec::new();
    for params in AllVectors::new(k, free.len()) {
        let mut table = vec![vec![0u32; len]; n];
        for (&(i, j), &v) in free.iter().zip(&params) {
            table[i][j] = v;
        }
        for level in 0..precision as usize {
            for i in 0..n {
                if let Some((c, a)) = &rec.rules[i] {
                    let mut v = if level == 0 { *c } else { 0 };
                    for (j, &aj) in a.iter().enumerate() {
                        v = k.mul_add(v, aj, table[j][level]);
                    }
                    table[i][level + 1] = v;
                }
            }
        }
        let dense: Vec<u32> = table.concat();
        points.push(HurwitzPoint::from_dense(k, n, 1, precision, &dense));
    }
    points.sort_by_key(HurwitzPoint::to_dense);
    points
}

/// The polynomials of order `≤ r` and degree `≤ e` vanishing on a finite
/// point set, at evaluation precision `N - r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedIdeal {
    pub field: PrimeField,
    pub n: usize,
    pub m: usize,
    pub order_bound: u32,
    pub degree_bound: u32,
    pub precision: u32,
    monomials: Vec<DiffMonomial>,
    space: Subspace,
}

impl BoundedIdeal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<DiffPolynomial> {
        self.space.basis().iter().map(|v| self.polynomial(v)).collect()
    }

    fn polynomial(&self, v: &[u32]) -> DiffPolynomial {
        let mut f = DiffPolynomial::zero(self.field, self.n, self.m);
        for (mono, &c) in self.monomials.iter().zip(v) {
            if c != 0 {
                f = f
                    .add(&DiffPolynomial::monomial(self.field, self.n, self.m, mono.clone(), c as i64))
                    .expect("same shape");
            }
        }
        f
    }

    fn coordinates(&self, f: &DiffPolynomial) -> Option<Vector> {
        if f.n() != self.n || f.m() != self.m || f.field() != self.field {
            return None;
        }
        let mut v = vec![0; self.monomials.len()];
        for (mono, c) in f.terms() {
            let i = self.monomials.binary_search(mono).ok()?;
            v[i] = c;
        }
        Some(v)
    }

    /// `f` has order and degree within the bounds.
    pub fn fits(&self, f: &DiffPolynomial) -> bool {
        self.coordinates(f).is_some()
    }

    /// `f` fits the bounds and lies in the ideal.
    pub fn contains(&self, f: &DiffPolynomial) -> bool {
        self.coordinates(f).is_some_and(|v| self.space.contains(&v))
    }
}

fn bounded_monomials(n: usize, m: usize, r: u32, e: u32, bounds: &Bounds) -> Result<Vec<DiffMonomial>> {
    let vars = DerivativeVariable::all_up_to(n, m, r);
    let mut monomials = DiffMonomial::all_up_to(&vars, e);
    if monomials.len() > bounds.monomials {
        return Err(Error::DimensionTooLarge(monomials.len()));
    }
    monomials.sort();
    Ok(monomials)
}

/// `I(X)` truncated to order `≤ r`, degree `≤ e`: the null space of the
/// evaluation matrix.
pub fn vanishing_ideal(
    field: PrimeField,
    n: usize,
    m: usize,
    points: &[HurwitzPoint],
    r: u32,
    e: u32,
    bounds: &Bounds,
) -> Result<BoundedIdeal> {
    let monomials = bounded_monomials(n, m, r, e, bounds)?;
    let precision = points.iter().map(HurwitzPoint::precision).min().unwrap_or(r);
    if r > precision {
        return Err(Error::PrecisionExhausted(format!(
            "order bound {r} above point precision {precision}"
        )));
    }
    let eval_prec = precision - r;
    let mut matrix: Vec<Vector> = Vec::new();
    for x in points {
        if x.n() != n {
            return Err(Error::ShapeMismatch(format!("point has {} coordinates, expected {n}", x.n())));
        }
        let x = x.truncate(precision);
        let columns: Vec<Vector> = monomials
            .iter()
            .map(|mono| {
                let f = DiffPolynomial::monomial(field, n, m, mono.clone(), 1);
                Ok(f.eval(x.coords())?.truncate(eval_prec).to_dense())
            })
            .collect::<Result<_>>()?;
        let height = MultiIndex::count_up_to(m, eval_prec) as usize;
        matrix.extend(linalg::transpose(&columns, height));
    }
    let kernel = linalg::null_space(field, &matrix, monomials.len());
    Ok(BoundedIdeal {
        field,
        n,
        m,
        order_bound: r,
        degree_bound: e,
        precision: eval_prec,
        space: Subspace::span(field, monomials.len(), kernel),
        monomials,
    })
}

/// The bounded ideal of a single point.
pub fn point_ideal(x: &HurwitzPoint, m: usize, r: u32, e: u32, bounds: &Bounds) -> Result<BoundedIdeal> {
    let field = x
        .coords()
        .first()
        .map(|c| c.field())
        .ok_or_else(|| Error::ShapeMismatch("point with no coordinates".into()))?;
    vanishing_ideal(field, x.n(), m, std::slice::from_ref(x), r, e, bounds)
}

/// Certifies `rad(a) ⊆ I(V(a))` on the bounded pieces: every generator, its
/// derivatives and its monomial multiples that fit the bounds must vanish
/// on `V(a)`. Equality is reported as unverified.
pub fn check_nss_inclusion(system: &System, precision: u32, r: u32, e: u32, bounds: &Bounds) -> Result<Report> {
    let v = solve_system(system, precision, bounds.search)?;
    let ideal = vanishing_ideal(system.field, system.n, system.m, &v.points, r, e, bounds)?;
    let multipliers = bounded_monomials(system.n, system.m, r, e, bounds)?;
    let mut report = Report::new();
    report.push(ReportLine::info("ZEROS", vec![v.points.len().to_string()]));
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut witness = None;
    for g in &system.polys {
        for theta in MultiIndex::all_up_to(system.m, r) {
            let tg = g.apply_theta(&theta)?;
            for mu in &multipliers {
                let mono = DiffPolynomial::monomial(system.field, system.n, system.m, mu.clone(), 1);
                let candidate = tg.mul(&mono)?;
                if !ideal.fits(&candidate) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if !ideal.contains(&candidate) {
                    witness.get_or_insert(candidate.to_string());
                }
            }
        }
    }
    let line = ReportLine::check("INCLUSION", &[], witness.is_none())
        .with_detail(format!("checked={checked}"))
        .with_detail(format!("skipped={skipped}"));
    report.push(match witness {
        Some(w) => line.with_detail(format!("witness={w}")),
        None => line,
    });
    report.push(ReportLine::info("EQUALITY", vec!["UNVERIFIED".into()]));
    Ok(report)
}

/// A map `Q^n → Q^k` given by `k` differential polynomials in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularMap {
    pub field: PrimeField,
    pub source_n: usize,
    pub m: usize,
    pub components: Vec<DiffPolynomial>,
}

impl RegularMap {
    pub fn new(field: PrimeField, source_n: usize, m: usize, components: Vec<DiffPolynomial>) -> Result<Self> {
        System::new(field, source_n, m, components.clone())?;
        Ok(RegularMap {
            field,
            source_n,
            m,
            components,
        })
    }

    pub fn identity(field: PrimeField, n: usize, m: usize) -> Self {
        let components = (1..=n)
            .map(|i| DiffPolynomial::variable(field, n, m, DerivativeVariable::base(i, m)))
            .collect();
        RegularMap {
            field,
            source_n: n,
            m,
            components,
        }
    }

    pub fn target_n(&self) -> usize {
        self.components.len()
    }

    /// Evaluates the components; the image has the smallest evaluation
    /// precision among them.
    pub fn apply(&self, x: &HurwitzPoint) -> Result<HurwitzPoint> {
        let images = self
            .components
            .iter()
            .map(|f| f.eval(x.coords()))
            .collect::<Result<Vec<_>>>()?;
        let prec = images.iter().map(|s| s.precision()).min().unwrap_or(x.precision());
        HurwitzPoint::new(images.iter().map(|s| s.truncate(prec)).collect())
    }

    /// `φ*(g) = g ∘ φ`, substituting `θy_j ↦ θφ_j`.
    pub fn pullback(&self, g: &DiffPolynomial) -> Result<DiffPolynomial> {
        if g.n() != self.target_n() || g.m() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "cannot pull back a polynomial in {} variables along a map into {}",
                g.n(),
                self.target_n()
            )));
        }
        g.substitute(self.source_n, |v| self.components[v.var - 1].apply_theta(&v.theta))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RegularMap) -> Result<RegularMap> {
        let components = self
            .components
            .iter()
            .map(|f| inner.pullback(f))
            .collect::<Result<Vec<_>>>()?;
        RegularMap::new(self.field, inner.source_n, self.m, components)
    }
}

/// Derivative variables killed by an ideal generated by derivative
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KilledVariables {
    /// Every derivative of each listed variable.
    Generated(Vec<DerivativeVariable>),
    /// Exactly the listed variables; must be closed under derivation up to
    /// the profile's horizon.
    Explicit(Vec<DerivativeVariable>),
}

impl KilledVariables {
    fn kills(&self, v: &DerivativeVariable) -> bool {
        match self {
            KilledVariables::Generated(gens) => gens
                .iter()
                .any(|g| g.var == v.var && g.theta.divides(&v.theta)),
            KilledVariables::Explicit(list) => list.contains(v),
        }
    }

    fn check_closed(&self, m: usize, t_max: u32) -> Result<()> {
        if let KilledVariables::Explicit(list) = self {
            for v in list {
                if v.ord() < t_max {
                    for t in 1..=m {
                        let w = v.derive(t);
                        if !list.contains(&w) {
                            return Err(Error::NotDerivativeClosed(format!("{w} missing (derivative of {v})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `ω(t)` for `t = 0..=t_max`, with the variables `y_1..y_n` as
/// generators.
pub fn dimension_profile(killed: &KilledVariables, n: usize, m: usize, t_max: u32) -> Result<Vec<usize>> {
    let gens: Vec<DerivativeVariable> = (1..=n).map(|i| DerivativeVariable::base(i, m)).collect();
    generator_profile(killed, n, m, &gens, t_max)
}

/// `ω(t) = dim W_t` where `W_t` is generated by `θg` with `ord θ ≤ t`,
/// `g` ranging over derivative-variable generators. In the quotient by a
/// variable ideal `W_t` is a polynomial ring on its surviving variables.
pub fn generator_profile(
    killed: &KilledVariables,
    n: usize,
    m: usize,
    generators: &[DerivativeVariable],
    t_max: u32,
) -> Result<Vec<usize>> {
    let horizon = t_max + generators.iter().map(DerivativeVariable::ord).max().unwrap_or(0);
    killed.check_closed(m, horizon)?;
    for g in generators {
        if g.var == 0 || g.var > n || g.theta.len() != m {
            return Err(Error::IndexOutOfRange(format!("generator {g} outside n={n} m={m}")));
        }
    }
    for i in 1..=n {
        let y = DerivativeVariable::base(i, m);
        if !killed.kills(&y) && !generators.contains(&y) {
            return Err(Error::ShapeMismatch(format!("generators do not reach {y}")));
        }
    }
    Ok((0..=t_max)
        .map(|t| {
            let mut surviving = BTreeSet::new();
            for g in generators {
                for theta in MultiIndex::all_up_to(m, t) {
                    let v = DerivativeVariable::new(g.var, g.theta.add(&theta));
                    if !killed.kills(&v) {
                        surviving.insert(v);
                    }
                }
            }
            surviving.len()
        })
        .collect())
}

/// `ω(t) ≤ ω'(t + c)` and `ω'(t) ≤ ω(t + c)` wherever both sides are known.
pub fn profiles_equivalent(w: &[usize], w2: &[usize], c: usize) -> bool {
    let len = w.len().min(w2.len());
    (0..len.saturating_sub(c)).all(|t| w[t] <= w2[t + c] && w2[t] <= w[t + c])
}
