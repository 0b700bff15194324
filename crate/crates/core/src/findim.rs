//! Finite-dimensional commutative differential `F_p`-algebras given by
//! structure constants, and the ideal taxonomy over them: nilradical,
//! radical `r`, the largest-differential-ideal map `π`, the quasiradical
//! `rad`, and primary/prime/maximal/quasi- classification.
//!
//! Ideals are [`Subspace`]s of the coordinate space `F_p^d`. Every
//! quotient computation runs on the complement coordinates of the ideal's
//! echelon basis.

use std::fmt;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{self, count_vectors, AllVectors, Subspace, Vector};

/// A commutative unital algebra `A = F_p^d` with `m` commuting derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDimDiffAlgebra {
    field: PrimeField,
    names: Vec<String>,
    unit: Vector,
    /// `mul_table[i][j] = e_i * e_j`.
    mul_table: Vec<Vec<Vector>>,
    /// `derivations[t][i] = ∂_{t+1} e_i`.
    derivations: Vec<Vec<Vector>>,
    bounds: Bounds,
}

/// One violated axiom together with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        for w in &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Classification flags of an ideal. The quasi- flags are `None` for
/// ideals that are not differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealClass {
    pub is_proper: bool,
    pub is_differential: bool,
    pub is_primary: bool,
    pub is_prime: bool,
    pub is_maximal: bool,
    pub is_radical: bool,
    pub is_quasiradical: Option<bool>,
    pub is_quasiprime: Option<bool>,
    pub is_quasimaximal: Option<bool>,
}

/// A simple algebra together with its verified maximal ideal
/// `{x : x^p = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasifield {
    pub maximal_ideal: Subspace,
}

fn shape_err(what: impl Into<String>) -> Error {
    Error::ShapeMismatch(what.into())
}

impl FinDimDiffAlgebra {
    /// Builds an algebra from structure constants. Only shapes are checked;
    /// see [`FinDimDiffAlgebra::validate`]. The unit is solved for; when no
    /// unit exists the zero vector is stored and validation reports it.
    pub fn new(
        field: PrimeField,
        names: Vec<String>,
        mul_table: Vec<Vec<Vector>>,
        derivations: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let d = names.len();
        if mul_table.len() != d || mul_table.iter().any(|row| row.len() != d) {
            return Err(shape_err(format!("multiplication table must be {d}x{d}")));
        }
        for t in &derivations {
            if t.len() != d {
                return Err(shape_err(format!("derivation matrix must have {d} rows")));
            }
        }
        let check = |v: &Vector| -> Result<Vector> {
            if v.len() != d {
                return Err(shape_err(format!("vector of length {}, expected {d}", v.len())));
            }
            Ok(v.iter().map(|&x| field.reduce_u64(x as u64)).collect())
        };
        let mul_table = mul_table
            .iter()
            .map(|row| row.iter().map(check).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let derivations = derivations
            .iter()
            .map(|t| t.iter().map(check).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut a = FinDimDiffAlgebra {
            field,
            names,
            unit: vec![0; d],
            mul_table,
            derivations,
            bounds: Bounds::default(),
        };
        if let Some(u) = a.solve_unit() {
            a.unit = u;
        }
        Ok(a)
    }

    /// Like [`FinDimDiffAlgebra::new`] but rejects tables that violate an axiom.
    pub fn checked(
        field: PrimeField,
        names: Vec<String>,
        mul_table: Vec<Vec<Vector>>,
        derivations: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let a = Self::new(field, names, mul_table, derivations)?;
        a.ensure_valid()?;
        Ok(a)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidAlgebra(format!(
                "{} violation(s), first: {v}",
                report.violations.len()
            )));
        }
        Ok(())
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn solve_unit(&self) -> Option<Vector> {
        let d = self.dim();
        let rows: Vec<Vector> = (0..d)
            .map(|i| self.mul_table[i].iter().flatten().copied().collect())
            .collect();
        let target: Vector = (0..d)
            .flat_map(|j| (0..d).map(move |l| u32::from(j == l)))
            .collect();
        if d == 0 {
            return Some(Vec::new());
        }
        linalg::solve_combination(self.field, &rows, &target)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Number of derivations.
    pub fn m(&self) -> usize {
        self.derivations.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn mul_table(&self) -> &[Vec<Vector>] {
        &self.mul_table
    }

    pub fn derivation_matrices(&self) -> &[Vec<Vector>] {
        &self.derivations
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// The scalar `c * 1`.
    pub fn scalar(&self, c: u32) -> Vector {
        self.unit.iter().map(|&u| self.field.mul(u, c)).collect()
    }

    /// True when both algebras have identical tables (names ignored).
    pub fn same_structure(&self, other: &FinDimDiffAlgebra) -> bool {
        self.field == other.field
            && self.unit == other.unit
            && self.mul_table == other.mul_table
            && self.derivations == other.derivations
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vector {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vector {
        x.iter().zip(y).map(|(&a, &b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[u32], c: u32) -> Vector {
        x.iter().map(|&a| self.field.mul(a, c)).collect()
    }

    /// Bilinear extension of the multiplication table.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vector {
        let k = self.field;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let c = k.mul(a, b);
                for (o, &t) in out.iter_mut().zip(&self.mul_table[i][j]) {
                    if t != 0 {
                        *o = k.mul_add(*o, c, t);
                    }
                }
            }
        }
        out
    }

    /// Action of the derivation `t` (1-based).
    pub fn derive(&self, x: &[u32], t: usize) -> Vector {
        linalg::combine(self.field, &self.derivations[t - 1], x, self.dim())
    }

    pub fn pow(&self, x: &[u32], mut exp: u64) -> Vector {
        let mut acc = self.unit.clone();
        let mut base = x.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn check_vec(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(shape_err(format!("vector of length {}, expected {}", x.len(), self.dim())));
        }
        if let Some(&bad) = x.iter().find(|&&v| v >= self.field.characteristic()) {
            return Err(shape_err(format!("entry {bad} is not a residue mod {}", self.field.characteristic())));
        }
        Ok(())
    }

    pub fn elem_mul(&self, x: &[u32], y: &[u32]) -> Result<Vector> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.mul(x, y))
    }

    pub fn elem_derive(&self, x: &[u32], t: usize) -> Result<Vector> {
        self.check_vec(x)?;
        if t == 0 || t > self.m() {
            return Err(Error::IndexOutOfRange(format!("derivation {t} with m={}", self.m())));
        }
        Ok(self.derive(x, t))
    }

    /// Checks commutativity, associativity, the unit law, Leibniz and
    /// commutation of derivations on basis elements.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut violations = Vec::new();
        let e: Vec<Vector> = (0..d).map(|i| self.basis_vector(i)).collect();
        let unit_ok = d == 0 || (0..d).all(|j| self.mul(&self.unit, &e[j]) == e[j]);
        if !unit_ok {
            violations.push(Violation {
                axiom: "unit",
                witness: vec![],
            });
        }
        for i in 0..d {
            for j in i + 1..d {
                if self.mul_table[i][j] != self.mul_table[j][i] {
                    violations.push(Violation {
                        axiom: "commutativity",
                        witness: vec![i, j],
                    });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &self.mul_table[i][j];
                for k in 0..d {
                    if self.mul(ij, &e[k]) != self.mul(&e[i], &self.mul_table[j][k]) {
                        violations.push(Violation {
                            axiom: "associativity",
                            witness: vec![i, j, k],
                        });
                    }
                }
            }
        }
        for t in 1..=self.m() {
            if unit_ok && self.derive(&self.unit, t).iter().any(|&x| x != 0) {
                violations.push(Violation {
                    axiom: "derivation_kills_unit",
                    witness: vec![t],
                });
            }
            for i in 0..d {
                for j in i..d {
                    let lhs = self.derive(&self.mul_table[i][j], t);
                    let rhs = self.add(
                        &self.mul(&self.derive(&e[i], t), &e[j]),
                        &self.mul(&e[i], &self.derive(&e[j], t)),
                    );
                    if lhs != rhs {
                        violations.push(Violation {
                            axiom: "leibniz",
                            witness: vec![t, i, j],
                        });
                    }
                }
            }
            for s in t + 1..=self.m() {
                for i in 0..d {
                    let a = self.derive(&self.derive(&e[i], t), s);
                    let b = self.derive(&self.derive(&e[i], s), t);
                    if a != b {
                        violations.push(Violation {
                            axiom: "derivations_commute",
                            witness: vec![t, s, i],
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `x^d = 0`; in dimension `d` this decides nilpotency.
    pub fn is_nilpotent(&self, x: &[u32]) -> bool {
        self.is_nilpotent_mod(x, &Subspace::zero(self.field, self.dim()))
    }

    fn is_nilpotent_mod(&self, x: &[u32], ideal: &Subspace) -> bool {
        ideal.contains(&self.pow(x, self.dim().max(1) as u64))
    }

    /// Iterated derivatives `θx` found by breadth-first search until their
    /// span (together with `base`) stops growing. Returns the new vectors
    /// that enlarged the span.
    fn derivative_generators(&self, x: &[u32], base: &Subspace) -> Vec<Vector> {
        let mut span = base.clone();
        let mut found = Vec::new();
        let mut frontier = vec![x.to_vec()];
        while let Some(v) = frontier.pop() {
            if span.insert(v.clone()) {
                for t in 1..=self.m() {
                    frontier.push(self.derive(&v, t));
                }
                found.push(v);
            }
        }
        found
    }

    /// Every iterated derivative of `x` is nilpotent.
    pub fn is_diff_nilpotent(&self, x: &[u32]) -> bool {
        self.is_diff_nilpotent_mod(x, &Subspace::zero(self.field, self.dim()))
    }

    /// Differential nilpotency in `A / ideal` (`ideal` differential).
    /// Vectors skipped by the search lie in the span of checked ones plus
    /// the ideal, and nilpotents modulo an ideal form a subspace.
    fn is_diff_nilpotent_mod(&self, x: &[u32], ideal: &Subspace) -> bool {
        self.derivative_generators(x, ideal)
            .iter()
            .all(|v| self.is_nilpotent_mod(v, ideal))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let d = self.dim();
        s.basis()
            .iter()
            .all(|v| (0..d).all(|j| s.contains(&self.mul(v, &self.basis_vector(j)))))
    }

    pub fn is_differential(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| (1..=self.m()).all(|t| s.contains(&self.derive(v, t))))
    }

    fn closure(&self, s: &Subspace, with_derivations: bool) -> Subspace {
        let d = self.dim();
        let mut span = s.clone();
        let mut frontier: Vec<Vector> = s.basis().to_vec();
        while let Some(v) = frontier.pop() {
            let mut images: Vec<Vector> = (0..d).map(|j| self.mul(&v, &self.basis_vector(j))).collect();
            if with_derivations {
                images.extend((1..=self.m()).map(|t| self.derive(&v, t)));
            }
            for w in images {
                if span.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        span
    }

    /// Smallest ideal containing `s`.
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        self.closure(s, false)
    }

    /// Smallest differential ideal containing `s`.
    pub fn differential_closure(&self, s: &Subspace) -> Subspace {
        self.closure(s, true)
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace::span(self.field, self.dim(), vectors)
    }

    /// The view `A / ideal` on complement coordinates.
    pub fn ring_quotient<'a>(&'a self, ideal: &'a Subspace) -> QuotientRing<'a> {
        QuotientRing {
            algebra: self,
            free: ideal.complement_coords(),
            ideal,
        }
    }

    fn check_elements(&self, k: usize) -> Result<()> {
        let size = count_vectors(self.field, k);
        if size > self.bounds.elements {
            return Err(Error::EnumerationTooLarge {
                size,
                bound: self.bounds.elements,
            });
        }
        Ok(())
    }

    fn require_ideal(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim() || s.field() != self.field {
            return Err(shape_err("subspace does not live in this algebra"));
        }
        if !self.is_ideal(s) {
            return Err(Error::NotIdeal(s.render()));
        }
        Ok(())
    }

    /// Set of nilpotent elements.
    pub fn nilradical(&self) -> Result<Subspace> {
        self.radical_r(&Subspace::zero(self.field, self.dim()))
    }

    /// `r(a) = {x : x^k ∈ a for some k}`, by scanning `A / a`.
    pub fn radical_r(&self, a: &Subspace) -> Result<Subspace> {
        self.require_ideal(a)?;
        let q = self.ring_quotient(a);
        self.check_elements(q.dim())?;
        let nil = q
            .elements()
            .map(|c| q.lift(&c))
            .filter(|x| self.is_nilpotent_mod(x, a));
        Ok(a.sum(&self.span(nil)))
    }

    /// `π(t)`: the largest differential ideal inside the ideal `t`.
    pub fn pi_map(&self, t: &Subspace) -> Result<Subspace> {
        self.require_ideal(t)?;
        let k = self.field;
        let d = self.dim();
        let mut cur = t.clone();
        loop {
            let rows = cur.basis().to_vec();
            if rows.is_empty() {
                break;
            }
            // column i: residues of ∂_s b_i modulo cur, stacked over s
            let cols: Vec<Vector> = rows
                .iter()
                .map(|b| {
                    (1..=self.m())
                        .flat_map(|s| cur.reduce(&self.derive(b, s)))
                        .collect()
                })
                .collect();
            let matrix = linalg::transpose(&cols, self.m() * d);
            let kernel = linalg::null_space(k, &matrix, rows.len());
            let next = self.span(kernel.iter().map(|c| linalg::combine(k, &rows, c, d)));
            if next == cur {
                break;
            }
            cur = next;
        }
        if !self.is_ideal(&cur) || !self.is_differential(&cur) {
            return Err(Error::CrossCheckFailed(format!(
                "π({}) = {} is not a differential ideal",
                t.render(),
                cur.render()
            )));
        }
        Ok(cur)
    }

    /// `rad(a)`: differential nilpotents modulo the differential ideal `a`,
    /// cross-checked against `π(r(a))`.
    pub fn quasiradical_rad(&self, a: &Subspace) -> Result<Subspace> {
        self.require_ideal(a)?;
        if !self.is_differential(a) {
            return Err(Error::NotDifferential);
        }
        let q = self.ring_quotient(a);
        self.check_elements(q.dim())?;
        let dn = q
            .elements()
            .map(|c| q.lift(&c))
            .filter(|x| self.is_diff_nilpotent_mod(x, a));
        let direct = a.sum(&self.span(dn));
        let via_pi = self.pi_map(&self.radical_r(a)?)?;
        if direct != via_pi {
            return Err(Error::CrossCheckFailed(format!(
                "rad({}) = {} but π(r(a)) = {}",
                a.render(),
                direct.render(),
                via_pi.render()
            )));
        }
        Ok(direct)
    }

    /// Classifies an ideal by scanning the elements of `A / q`.
    pub fn classify_ideal(&self, q: &Subspace) -> Result<IdealClass> {
        self.require_ideal(q)?;
        let quo = self.ring_quotient(q);
        self.check_elements(quo.dim())?;
        let proper = !q.is_whole();
        let differential = self.is_differential(q);
        let (mut primary, mut prime, mut maximal, mut radical) = (proper, proper, proper, true);
        let mut quasiradical = differential;
        let mut quasimaximal = differential && proper;
        for c in quo.elements().skip(1) {
            let x = quo.lift(&c);
            let zd = quo.is_zero_divisor(&c);
            let nil = self.is_nilpotent_mod(&x, q);
            if zd {
                prime = false;
                if !nil {
                    primary = false;
                }
            }
            if nil {
                radical = false;
            }
            if maximal && !quo.is_unit(&c) {
                maximal = false;
            }
            if differential {
                if quasiradical && self.is_diff_nilpotent_mod(&x, q) {
                    quasiradical = false;
                }
                if quasimaximal {
                    let bigger = self.differential_closure(&q.sum(&self.span([x])));
                    if !bigger.is_whole() {
                        quasimaximal = false;
                    }
                }
            }
        }
        let on_diff = |b: bool| differential.then_some(b);
        Ok(IdealClass {
            is_proper: proper,
            is_differential: differential,
            is_primary: primary,
            is_prime: prime,
            is_maximal: maximal,
            is_radical: radical,
            is_quasiradical: on_diff(quasiradical),
            is_quasiprime: on_diff(quasiradical && primary),
            is_quasimaximal: on_diff(quasimaximal),
        })
    }

    fn subspaces(&self) -> Result<Vec<Subspace>> {
        linalg::enumerate_subspaces(self.field, self.dim(), self.bounds.subspaces)
    }

    /// All ideals, sorted by dimension and then echelon basis.
    pub fn enumerate_ideals(&self) -> Result<Vec<Subspace>> {
        Ok(self.subspaces()?.into_iter().filter(|s| self.is_ideal(s)).collect())
    }

    /// All differential ideals, in the same canonical order.
    pub fn enumerate_differential_ideals(&self) -> Result<Vec<Subspace>> {
        Ok(self
            .subspaces()?
            .into_iter()
            .filter(|s| self.is_ideal(s) && self.is_differential(s))
            .collect())
    }

    /// No differential ideals besides `0` and `A`.
    pub fn is_simple(&self) -> Result<bool> {
        let ideals = self.enumerate_differential_ideals()?;
        Ok(self.dim() > 0 && ideals.len() == 2)
    }

    /// For a simple algebra, returns `{x : x^p = 0}` after checking that it
    /// is the unique maximal ideal; `None` if the algebra is not simple.
    pub fn quasifield(&self) -> Result<Option<Quasifield>> {
        if !self.is_simple()? {
            return Ok(None);
        }
        self.check_elements(self.dim())?;
        let p = self.field.characteristic() as u64;
        let zero = self.zero();
        let members: Vec<Vector> = AllVectors::new(self.field, self.dim())
            .filter(|x| self.pow(x, p) == zero)
            .collect();
        let count = members.len() as u128;
        let frob = self.span(members);
        if count_vectors(self.field, frob.dim()) != count {
            return Err(Error::CrossCheckFailed("{x : x^p = 0} is not a subspace".into()));
        }
        let mut maximal = Vec::new();
        for ideal in self.enumerate_ideals()? {
            if self.classify_ideal(&ideal)?.is_maximal {
                maximal.push(ideal);
            }
        }
        if maximal.len() != 1 || maximal[0] != frob {
            return Err(Error::CrossCheckFailed(format!(
                "maximal ideals {:?} differ from {{x : x^p = 0}} = {}",
                maximal.iter().map(Subspace::render).collect::<Vec<_>>(),
                frob.render()
            )));
        }
        Ok(Some(Quasifield { maximal_ideal: frob }))
    }

    /// `A / a` for a proper differential ideal `a`, on the complement basis.
    pub fn quotient(&self, a: &Subspace) -> Result<FinDimDiffAlgebra> {
        self.require_ideal(a)?;
        if !self.is_differential(a) {
            return Err(Error::NotDifferential);
        }
        if a.is_whole() {
            return Err(Error::NotProper);
        }
        let q = self.ring_quotient(a);
        let free = q.free.clone();
        let names = free.iter().map(|&i| self.names[i].clone()).collect();
        let mul_table = free
            .iter()
            .map(|&i| free.iter().map(|&j| q.project(&self.mul_table[i][j])).collect())
            .collect();
        let derivations = (1..=self.m())
            .map(|t| free.iter().map(|&i| q.project(&self.derive(&self.basis_vector(i), t))).collect())
            .collect();
        Ok(FinDimDiffAlgebra::new(self.field, names, mul_table, derivations)?.with_bounds(self.bounds))
    }

    /// Componentwise product `A × B`; both factors need the same field and
    /// number of derivations.
    pub fn product(a: &FinDimDiffAlgebra, b: &FinDimDiffAlgebra) -> Result<FinDimDiffAlgebra> {
        if a.field != b.field || a.m() != b.m() {
            return Err(shape_err("product factors differ in field or number of derivations"));
        }
        let (da, db) = (a.dim(), b.dim());
        let embed_a = |v: &Vector| -> Vector { v.iter().copied().chain(std::iter::repeat_n(0, db)).collect() };
        let embed_b = |v: &Vector| -> Vector { std::iter::repeat_n(0, da).chain(v.iter().copied()).collect() };
        let zero = vec![0; da + db];
        let mut mul_table = vec![vec![zero.clone(); da + db]; da + db];
        for i in 0..da {
            for j in 0..da {
                mul_table[i][j] = embed_a(&a.mul_table[i][j]);
            }
        }
        for i in 0..db {
            for j in 0..db {
                mul_table[da + i][da + j] = embed_b(&b.mul_table[i][j]);
            }
        }
        let derivations = (0..a.m())
            .map(|t| {
                a.derivations[t]
                    .iter()
                    .map(embed_a)
                    .chain(b.derivations[t].iter().map(embed_b))
                    .collect()
            })
            .collect();
        let names = a
            .names
            .iter()
            .map(|n| format!("{n}.1"))
            .chain(b.names.iter().map(|n| format!("{n}.2")))
            .collect();
        Ok(FinDimDiffAlgebra::new(a.field, names, mul_table, derivations)?.with_bounds(a.bounds))
    }

    /// Renders a vector as `a*name + ...` over the basis names.
    pub fn render(&self, x: &[u32]) -> String {
        let parts: Vec<String> = x
            .iter()
            .zip(&self.names)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, n)| if c == 1 { n.clone() } else { format!("{c}*{n}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// `A / I` for an ideal `I`, with elements written in the complement
/// coordinates of `I`'s echelon basis.
#[derive(Debug, Clone)]
pub struct QuotientRing<'a> {
    algebra: &'a FinDimDiffAlgebra,
    ideal: &'a Subspace,
    free: Vec<usize>,
}

impl QuotientRing<'_> {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn lift(&self, c: &[u32]) -> Vector {
        let mut x = self.algebra.zero();
        for (&i, &v) in self.free.iter().zip(c) {
            x[i] = v;
        }
        x
    }

    pub fn project(&self, x: &[u32]) -> Vector {
        let r = self.ideal.reduce(x);
        self.free.iter().map(|&i| r[i]).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vector {
        self.project(&self.algebra.mul(&self.lift(a), &self.lift(b)))
    }

    pub fn elements(&self) -> AllVectors {
        AllVectors::new(self.algebra.field, self.dim())
    }

    /// Images `c * b_j` of the quotient basis, one per `j`.
    fn multiplication_images(&self, c: &[u32]) -> Vec<Vector> {
        (0..self.dim())
            .map(|j| {
                let mut e = vec![0; self.dim()];
                e[j] = 1;
                self.mul(c, &e)
            })
            .collect()
    }

    /// `c y = 0` for some nonzero `y`.
    pub fn is_zero_divisor(&self, c: &[u32]) -> bool {
        let images = self.multiplication_images(c);
        linalg::rank(self.algebra.field, &linalg::transpose(&images, self.dim()), self.dim()) < self.dim()
    }

    /// `c y = 1` is solvable.
    pub fn is_unit(&self, c: &[u32]) -> bool {
        let one = self.project(&self.algebra.unit);
        linalg::solve_combination(self.algebra.field, &self.multiplication_images(c), &one).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sp(a: &FinDimDiffAlgebra, rows: &[&[u32]]) -> Subspace {
        a.span(rows.iter().map(|r| r.to_vec()))
    }

    #[test]
    fn validation() {
        assert!(fixtures::b2().validate().is_valid());
        assert!(fixtures::product(&fixtures::b2(), &fixtures::b2()).validate().is_valid());
        let k = PrimeField::new(2).unwrap();
        let bad = FinDimDiffAlgebra::new(
            k,
            vec!["1".into(), "eps".into()],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
            vec![vec![vec![1, 0], vec![0, 1]]],
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.axiom == "derivation_kills_unit"));
        assert!(report.violations.iter().any(|v| v.axiom == "leibniz" && v.witness == [1, 0, 0]));
        assert!(matches!(bad.ensure_valid(), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn truncations_valid_only_at_prime_powers() {
        for (p, n, ok) in [(2, 2, true), (2, 3, false), (2, 4, true), (3, 3, true), (3, 4, false), (5, 5, true), (2, 5, false)] {
            let a = fixtures::hurwitz_truncation(p, n);
            assert_eq!(a.validate().is_valid(), ok, "p={p} n={n}");
        }
        let bad = fixtures::hurwitz_truncation(2, 3).validate();
        assert_eq!(bad.violations, vec![Violation { axiom: "leibniz", witness: vec![1, 1, 2] }]);
    }

    #[test]
    fn element_operations() {
        let b2 = fixtures::b2();
        let eps = vec![0, 1];
        assert_eq!(b2.elem_mul(&eps, b2.unit()).unwrap(), eps);
        assert_eq!(b2.elem_mul(&eps, &eps).unwrap(), vec![0, 0]);
        assert_eq!(b2.elem_derive(&eps, 1).unwrap(), vec![1, 0]);
        assert!(matches!(b2.elem_mul(&[1], &eps), Err(Error::ShapeMismatch(_))));
        assert!(matches!(b2.elem_derive(&eps, 2), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn nilpotency() {
        let b2 = fixtures::b2();
        assert!(b2.is_nilpotent(&[0, 1]));
        assert!(!b2.is_nilpotent(&[1, 1]));
        assert!(b2.is_nilpotent(&[0, 0]));
        assert!(!b2.is_diff_nilpotent(&[0, 1]));
        assert!(b2.is_diff_nilpotent(&[0, 0]));
        let d2 = fixtures::dual_numbers(2);
        assert!(d2.is_diff_nilpotent(&[0, 1]));
    }

    #[test]
    fn radicals() {
        let b2 = fixtures::b2();
        assert_eq!(b2.nilradical().unwrap(), sp(&b2, &[&[0, 1]]));
        let f3 = fixtures::prime_field(3);
        assert!(f3.nilradical().unwrap().is_zero());
        let bb = fixtures::product(&b2, &b2);
        assert_eq!(bb.nilradical().unwrap(), sp(&bb, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]));
        assert_eq!(b2.radical_r(&Subspace::zero(b2.field(), 2)).unwrap(), sp(&b2, &[&[0, 1]]));
        let whole = Subspace::whole(b2.field(), 2);
        assert_eq!(b2.radical_r(&whole).unwrap(), whole);
        assert!(matches!(b2.radical_r(&sp(&b2, &[&[1, 1]])), Err(Error::NotIdeal(_))));
        assert!(matches!(
            fixtures::hurwitz_truncation(2, 4).radical_r(&sp(&fixtures::hurwitz_truncation(2, 4), &[&[0, 1, 0, 0]])),
            Err(Error::NotIdeal(_))
        ));
    }

    #[test]
    fn closures() {
        let b2 = fixtures::b2();
        let s = sp(&b2, &[&[0, 1]]);
        assert_eq!(b2.ideal_closure(&s), s);
        assert!(b2.differential_closure(&s).is_whole());
        let z = Subspace::zero(b2.field(), 2);
        assert!(b2.differential_closure(&z).is_zero());
    }

    #[test]
    fn pi_examples() {
        let b2 = fixtures::b2();
        assert!(b2.pi_map(&sp(&b2, &[&[0, 1]])).unwrap().is_zero());
        let whole = Subspace::whole(b2.field(), 2);
        assert_eq!(b2.pi_map(&whole).unwrap(), whole);
        let d2 = fixtures::dual_numbers(2);
        for t in d2.enumerate_ideals().unwrap() {
            assert_eq!(d2.pi_map(&t).unwrap(), t);
        }
    }

    #[test]
    fn quasiradical_examples() {
        let b2 = fixtures::b2();
        let z = Subspace::zero(b2.field(), 2);
        assert!(b2.quasiradical_rad(&z).unwrap().is_zero());
        let d2 = fixtures::dual_numbers(2);
        assert_eq!(d2.quasiradical_rad(&z).unwrap(), sp(&d2, &[&[0, 1]]));
        let whole = Subspace::whole(b2.field(), 2);
        assert_eq!(b2.quasiradical_rad(&whole).unwrap(), whole);
        assert_eq!(b2.quasiradical_rad(&sp(&b2, &[&[0, 1]])), Err(Error::NotDifferential));
    }

    #[test]
    fn classification_examples() {
        let b2 = fixtures::b2();
        let c0 = b2.classify_ideal(&Subspace::zero(b2.field(), 2)).unwrap();
        assert!(c0.is_primary && !c0.is_prime && !c0.is_maximal);
        assert_eq!(c0.is_quasiradical, Some(true));
        assert_eq!(c0.is_quasiprime, Some(true));
        assert_eq!(c0.is_quasimaximal, Some(true));
        let ce = b2.classify_ideal(&sp(&b2, &[&[0, 1]])).unwrap();
        assert!(ce.is_prime && ce.is_maximal && !ce.is_differential);
        assert_eq!(ce.is_quasiprime, None);
        let bb = fixtures::product(&b2, &b2);
        let i1 = sp(&bb, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let c1 = bb.classify_ideal(&i1).unwrap();
        assert_eq!(c1.is_quasiprime, Some(true));
        assert_eq!(c1.is_quasimaximal, Some(true));
        let whole = bb.classify_ideal(&Subspace::whole(bb.field(), 4)).unwrap();
        assert!(!whole.is_proper && !whole.is_primary && !whole.is_prime);
    }

    #[test]
    fn differential_ideal_enumeration() {
        let b2 = fixtures::b2();
        let ideals = b2.enumerate_differential_ideals().unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(b2.is_simple().unwrap());
        let qf = b2.quasifield().unwrap().unwrap();
        assert_eq!(qf.maximal_ideal, sp(&b2, &[&[0, 1]]));

        let h2 = fixtures::hurwitz_truncation(2, 4);
        assert!(h2.is_simple().unwrap());
        let h3 = fixtures::hurwitz_truncation(3, 3);
        assert!(h3.is_simple().unwrap());
        assert_eq!(
            h3.quasifield().unwrap().unwrap().maximal_ideal,
            sp(&h3, &[&[0, 1, 0], &[0, 0, 1]])
        );

        let d2 = fixtures::dual_numbers(2);
        let ideals = d2.enumerate_differential_ideals().unwrap();
        assert_eq!(ideals, vec![Subspace::zero(d2.field(), 2), sp(&d2, &[&[0, 1]]), Subspace::whole(d2.field(), 2)]);
        assert!(!d2.is_simple().unwrap());
        assert_eq!(d2.quasifield().unwrap(), None);
    }

    #[test]
    fn quasimaximal_matches_enumeration() {
        for a in fixtures::suite() {
            let diff = a.algebra.enumerate_differential_ideals().unwrap();
            for q in &diff {
                let by_enum = !q.is_whole()
                    && !diff.iter().any(|r| r != q && !r.is_whole() && q.is_subspace_of(r));
                assert_eq!(a.algebra.classify_ideal(q).unwrap().is_quasimaximal, Some(by_enum), "{}", a.name);
            }
        }
    }

    #[test]
    fn quotients() {
        let b2 = fixtures::b2();
        assert_eq!(b2.quotient(&Subspace::whole(b2.field(), 2)), Err(Error::NotProper));
        assert!(b2.quotient(&Subspace::zero(b2.field(), 2)).unwrap().same_structure(&b2));
        let bb = fixtures::product(&b2, &b2);
        let i1 = sp(&bb, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let q = bb.quotient(&i1).unwrap();
        assert!(q.same_structure(&b2));
        assert!(q.validate().is_valid());
        assert_eq!(b2.quotient(&sp(&b2, &[&[0, 1]])), Err(Error::NotDifferential));
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let big = fixtures::hurwitz_truncation(2, 4).with_bounds(Bounds { elements: 8, ..Bounds::default() });
        assert!(matches!(big.nilradical(), Err(Error::EnumerationTooLarge { size: 16, bound: 8 })));
        let big = fixtures::hurwitz_truncation(2, 4).with_bounds(Bounds { subspaces: 10, ..Bounds::default() });
        assert!(matches!(big.is_simple(), Err(Error::EnumerationTooLarge { .. })));
    }
}
