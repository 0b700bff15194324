//! Prime and quasiprime spectra of finite differential algebras.
//!
//! A finite topology is stored as its specialization order: the closed sets
//! are the `V(E)`, i.e. upward-closed families under containment, so
//! homeomorphism checks reduce to order isomorphisms.

use std::fmt;

use crate::error::{Error, Result};
use crate::findim::FinDimDiffAlgebra;
use crate::hurwitz::MultiIndex;
use crate::linalg::{Subspace, Vector};
use crate::report::{Report, ReportLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Spec,
    QSpec,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Spec => "SPEC",
            LatticeKind::QSpec => "QSPEC",
        })
    }
}

#[derive(Debug, Clone)]
pub struct IdealLattice {
    kind: LatticeKind,
    algebra: FinDimDiffAlgebra,
    points: Vec<Subspace>,
    maximal: Vec<bool>,
    le: Vec<Vec<bool>>,
}

/// All prime ideals, in canonical enumeration order.
pub fn build_spec(a: &FinDimDiffAlgebra) -> Result<IdealLattice> {
    build(a, LatticeKind::Spec)
}

/// All quasiprime ideals, in canonical enumeration order.
pub fn build_qspec(a: &FinDimDiffAlgebra) -> Result<IdealLattice> {
    build(a, LatticeKind::QSpec)
}

fn build(a: &FinDimDiffAlgebra, kind: LatticeKind) -> Result<IdealLattice> {
    let candidates = match kind {
        LatticeKind::Spec => a.enumerate_ideals()?,
        LatticeKind::QSpec => a.enumerate_differential_ideals()?,
    };
    let mut points = Vec::new();
    let mut maximal = Vec::new();
    for ideal in candidates {
        let c = a.classify_ideal(&ideal)?;
        let (keep, max) = match kind {
            LatticeKind::Spec => (c.is_prime, c.is_maximal),
            LatticeKind::QSpec => (c.is_quasiprime == Some(true), c.is_quasimaximal == Some(true)),
        };
        if keep {
            points.push(ideal);
            maximal.push(max);
        }
    }
    let le = points
        .iter()
        .map(|x| points.iter().map(|y| x.is_subspace_of(y)).collect())
        .collect();
    Ok(IdealLattice {
        kind,
        algebra: a.clone(),
        points,
        maximal,
        le,
    })
}

impl IdealLattice {
    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn algebra(&self) -> &FinDimDiffAlgebra {
        &self.algebra
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `le(i, j)` iff point `i` is contained in point `j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    /// Indices of the maximal (resp. quasimaximal) points.
    pub fn maximal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.maximal[i]).collect()
    }

    pub fn index_of(&self, ideal: &Subspace) -> Option<usize> {
        self.points.iter().position(|p| p == ideal)
    }

    fn containing(&self, s: &Subspace) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| s.is_subspace_of(&self.points[i]))
            .collect()
    }

    /// The smallest ideal of the right kind containing `s`, and its radical.
    fn generated(&self, s: &Subspace) -> Result<(Subspace, Subspace)> {
        let a = &self.algebra;
        Ok(match self.kind {
            LatticeKind::Spec => {
                let i = a.ideal_closure(s);
                let r = a.radical_r(&i)?;
                (i, r)
            }
            LatticeKind::QSpec => {
                let i = a.differential_closure(s);
                let r = a.quasiradical_rad(&i)?;
                (i, r)
            }
        })
    }

    /// Points containing `e`. The same set is computed from the generated
    /// ideal and from its (quasi)radical, and all three must agree.
    pub fn closed_set(&self, e: &Subspace) -> Result<Vec<usize>> {
        let direct = self.containing(e);
        let (ideal, radical) = self.generated(e)?;
        let via_ideal = self.containing(&ideal);
        let via_radical = self.containing(&radical);
        if direct != via_ideal || direct != via_radical {
            return Err(Error::CrossCheckFailed(format!(
                "V({}) = {direct:?}, via ideal {via_ideal:?}, via radical {via_radical:?}",
                e.render()
            )));
        }
        Ok(direct)
    }

    pub fn closed_set_of_elements(&self, elements: &[Vector]) -> Result<Vec<usize>> {
        self.closed_set(&self.algebra.span(elements.iter().cloned()))
    }

    /// Closure of a set of points: the points containing their intersection.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let a = &self.algebra;
        let meet = set
            .iter()
            .fold(Subspace::whole(a.field(), a.dim()), |acc, &i| acc.intersection(&self.points[i]));
        self.containing(&meet)
    }

    /// `POINT <id> dim=<k> basis=<rows>` lines followed by `LE <i> <j>`.
    pub fn dump(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| format!("POINT {i} dim={} basis={}", p.dim(), p.render()))
            .collect();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.le[i][j] {
                    out.push(format!("LE {i} {j}"));
                }
            }
        }
        out
    }
}

/// The ideals over which the closed-set axioms are quantified: all ideals
/// for Spec, the differential ones for QSpec.
fn axiom_ideals(l: &IdealLattice) -> Result<Vec<Subspace>> {
    match l.kind {
        LatticeKind::Spec => l.algebra.enumerate_ideals(),
        LatticeKind::QSpec => l.algebra.enumerate_differential_ideals(),
    }
}

/// Span of all products `x y` with `x ∈ a`, `y ∈ b`.
pub fn ideal_product(alg: &FinDimDiffAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let products = a
        .basis()
        .iter()
        .flat_map(|x| b.basis().iter().map(move |y| alg.mul(x, y)))
        .collect::<Vec<_>>();
    alg.span(products)
}

fn axiom_line(name: &str, witness: Option<String>) -> ReportLine {
    match witness {
        None => ReportLine::check("AXIOM", &[name], true),
        Some(w) => ReportLine::check("AXIOM", &[name], false).with_detail(w),
    }
}

/// Checks the closed-set axioms exhaustively:
/// `closure`: `V(E) = V(a) = V(rad a)` for every subspace generated by one
/// element or one enumerated ideal; `empty_and_whole`: `V(0) = X`,
/// `V(1) = ∅`; `union`: `V(a + b) = V(a) ∩ V(b)` on pairs and on the whole
/// family; `intersection_product`: `V(a ∩ b) = V(ab) = V(a) ∪ V(b)`.
pub fn verify_topology_axioms(l: &IdealLattice) -> Result<Report> {
    let a = &l.algebra;
    let ideals = axiom_ideals(l)?;
    let mut report = Report::new();

    let mut witness = None;
    let mut generators: Vec<Subspace> = ideals.clone();
    if crate::linalg::count_vectors(a.field(), a.dim()) <= a.bounds().elements {
        generators.extend(crate::linalg::AllVectors::new(a.field(), a.dim()).map(|x| a.span([x])));
    }
    for e in &generators {
        match l.closed_set(e) {
            Ok(_) => {}
            Err(Error::CrossCheckFailed(msg)) => {
                witness.get_or_insert(msg);
            }
            Err(other) => return Err(other),
        }
    }
    report.push(axiom_line("closure", witness));

    let all: Vec<usize> = (0..l.len()).collect();
    let zero = Subspace::zero(a.field(), a.dim());
    let whole = Subspace::whole(a.field(), a.dim());
    let ok = l.closed_set(&zero)? == all && l.closed_set(&whole)?.is_empty();
    report.push(axiom_line("empty_and_whole", (!ok).then(|| "V(0) or V(1)".to_string())));

    let vs: Vec<Vec<usize>> = ideals.iter().map(|i| l.closed_set(i)).collect::<Result<_>>()?;
    let mut union_witness = None;
    let mut meet_witness = None;
    for i in 0..ideals.len() {
        for j in i..ideals.len() {
            let both: Vec<usize> = vs[i].iter().copied().filter(|x| vs[j].contains(x)).collect();
            let mut either: Vec<usize> = vs[i].iter().chain(&vs[j]).copied().collect();
            either.sort_unstable();
            either.dedup();
            if l.closed_set(&ideals[i].sum(&ideals[j]))? != both {
                union_witness.get_or_insert(format!("ideals {i} {j}"));
            }
            let meet = l.closed_set(&ideals[i].intersection(&ideals[j]))?;
            let prod = l.closed_set(&ideal_product(a, &ideals[i], &ideals[j]))?;
            if meet != either || prod != either {
                meet_witness.get_or_insert(format!("ideals {i} {j}"));
            }
        }
    }
    let family = ideals.iter().fold(zero, |acc, i| acc.sum(i));
    let all_meet: Vec<usize> = all.iter().copied().filter(|x| vs.iter().all(|v| v.contains(x))).collect();
    if l.closed_set(&family)? != all_meet {
        union_witness.get_or_insert("whole family".to_string());
    }
    report.push(axiom_line("union", union_witness));
    report.push(axiom_line("intersection_product", meet_witness));
    Ok(report)
}

fn same_points(a: &[Subspace], b: &[Subspace]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

/// Checks that `π` and `r` are mutually inverse, containment-preserving
/// bijections Spec ↔ QSpec and Max ↔ QMax, and between radical and
/// quasiradical ideals.
pub fn check_homeomorphism(a: &FinDimDiffAlgebra) -> Result<Report> {
    let spec = build_spec(a)?;
    let qspec = build_qspec(a)?;
    let mut report = Report::new();
    let pi_of: Vec<Subspace> = spec.points.iter().map(|p| a.pi_map(p)).collect::<Result<_>>()?;
    let r_of: Vec<Subspace> = qspec.points.iter().map(|q| a.radical_r(q)).collect::<Result<_>>()?;
    let mut witness = None;
    for (i, p) in spec.points.iter().enumerate() {
        match qspec.index_of(&pi_of[i]) {
            Some(j) if r_of[j] == *p => {}
            _ => {
                witness.get_or_insert(format!("spec point {i}"));
            }
        }
    }
    for (j, q) in qspec.points.iter().enumerate() {
        match spec.index_of(&r_of[j]) {
            Some(i) if pi_of[i] == *q => {}
            _ => {
                witness.get_or_insert(format!("qspec point {j}"));
            }
        }
    }
    report.push(homeo_line("spec_qspec", witness.clone()));

    let mut order_witness = None;
    if witness.is_none() {
        for i in 0..spec.len() {
            for k in 0..spec.len() {
                let (qi, qk) = (qspec.index_of(&pi_of[i]).unwrap_or(0), qspec.index_of(&pi_of[k]).unwrap_or(0));
                if spec.le(i, k) != qspec.le(qi, qk) {
                    order_witness.get_or_insert(format!("spec points {i} {k}"));
                }
            }
        }
    } else {
        order_witness = Some("no bijection".into());
    }
    report.push(homeo_line("order", order_witness));

    let max_spec: Vec<Subspace> = spec.maximal_points().into_iter().map(|i| pi_of[i].clone()).collect();
    let max_q: Vec<Subspace> = qspec.maximal_points().into_iter().map(|j| qspec.points[j].clone()).collect();
    let ok = same_points(&max_spec, &max_q);
    report.push(homeo_line("max_qmax", (!ok).then(|| "maximal points differ".to_string())));

    let mut rad_witness = None;
    for t in a.enumerate_ideals()? {
        if a.radical_r(&t)? == t && a.radical_r(&a.pi_map(&t)?)? != t {
            rad_witness.get_or_insert(format!("radical {}", t.render()));
        }
    }
    for u in a.enumerate_differential_ideals()? {
        if a.quasiradical_rad(&u)? == u && a.pi_map(&a.radical_r(&u)?)? != u {
            rad_witness.get_or_insert(format!("quasiradical {}", u.render()));
        }
    }
    report.push(homeo_line("radical_quasiradical", rad_witness));
    Ok(report)
}

fn homeo_line(name: &str, witness: Option<String>) -> ReportLine {
    let line = ReportLine::check("HOMEO", &[name], witness.is_none());
    match witness {
        Some(w) => line.with_detail(w),
        None => line,
    }
}

/// `1 point`, `2 points`.
pub fn plural_points(n: usize) -> String {
    if n == 1 {
        "1 point".into()
    } else {
        format!("{n} points")
    }
}

/// Both sides of `Y_f = ∪_θ Y_{(θf)^p}` on a QSpec lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodOpen {
    pub y_f: Vec<usize>,
    pub union: Vec<usize>,
    /// Derivative words used before the generated ideal chain stabilized.
    pub words: usize,
}

impl GoodOpen {
    pub fn holds(&self) -> bool {
        self.y_f == self.union
    }
}

pub fn good_open_decomposition(l: &IdealLattice, f: &[u32]) -> Result<GoodOpen> {
    if l.kind != LatticeKind::QSpec {
        return Err(Error::ShapeMismatch("good opens live on a QSpec lattice".into()));
    }
    let a = &l.algebra;
    let p = a.field().characteristic() as u64;
    let bracket = a.differential_closure(&a.span([f.to_vec()]));
    let y_f: Vec<usize> = (0..l.len())
        .filter(|&i| !bracket.is_subspace_of(&l.points[i]))
        .collect();

    let mut in_union = vec![false; l.len()];
    let mut chain = Subspace::zero(a.field(), a.dim());
    let mut words = 0;
    for order in 0.. {
        let level: Vec<Vector> = MultiIndex::all_up_to(a.m(), order)
            .into_iter()
            .filter(|k| k.ord() == order)
            .map(|k| apply_word(a, f, &k))
            .collect();
        words += level.len();
        for g in &level {
            let gp = a.pow(g, p);
            for (i, hit) in in_union.iter_mut().enumerate() {
                if !l.points[i].contains(&gp) {
                    *hit = true;
                }
            }
        }
        let next = a.ideal_closure(&chain.sum(&a.span(level)));
        if next == chain && order > 0 {
            break;
        }
        chain = next;
    }
    let union = (0..l.len()).filter(|&i| in_union[i]).collect();
    Ok(GoodOpen { y_f, union, words })
}

fn apply_word(a: &FinDimDiffAlgebra, f: &[u32], k: &MultiIndex) -> Vector {
    let mut x = f.to_vec();
    for t in k.as_word() {
        x = a.derive(&x, t);
    }
    x
}

/// Density of `Y_{f^p}` in QSpec next to the zero-divisor test in
/// `A / nilradical`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub dense: bool,
    pub zero_divisor: bool,
}

impl Density {
    pub fn consistent(&self) -> bool {
        self.dense != self.zero_divisor
    }
}

pub fn density_check(l: &IdealLattice, f: &[u32]) -> Result<Density> {
    if l.kind != LatticeKind::QSpec {
        return Err(Error::ShapeMismatch("good opens live on a QSpec lattice".into()));
    }
    let a = &l.algebra;
    let fp = a.pow(f, a.field().characteristic() as u64);
    let open: Vec<usize> = (0..l.len()).filter(|&i| !l.points[i].contains(&fp)).collect();
    let dense = l.closure(&open).len() == l.len();
    let nil = a.nilradical()?;
    let reduced = a.ring_quotient(&nil);
    let zero_divisor = reduced.dim() > 0 && reduced.is_zero_divisor(&reduced.project(f));
    Ok(Density { dense, zero_divisor })
}

/// `Y_{f^p}` is dense in QSpec; errors if this disagrees with `f` being a
/// non-zero-divisor modulo the nilradical.
pub fn is_dense_good_open(l: &IdealLattice, f: &[u32]) -> Result<bool> {
    let d = density_check(l, f)?;
    if !d.consistent() {
        return Err(Error::CrossCheckFailed(format!(
            "density {} but zero-divisor {}",
            d.dense, d.zero_divisor
        )));
    }
    Ok(d.dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lattice_examples() {
        let b2 = fixtures::b2();
        let spec = build_spec(&b2).unwrap();
        let qspec = build_qspec(&b2).unwrap();
        assert_eq!(spec.points(), &[b2.span([vec![0, 1]])]);
        assert_eq!(qspec.points(), &[Subspace::zero(b2.field(), 2)]);
        let bb = fixtures::product(&b2, &b2);
        assert_eq!(build_spec(&bb).unwrap().len(), 2);
        assert_eq!(build_qspec(&bb).unwrap().len(), 2);
        let f2 = fixtures::prime_field(2);
        assert_eq!(build_spec(&f2).unwrap().points(), build_qspec(&f2).unwrap().points());
        assert_eq!(build_qspec(&f2).unwrap().len(), 1);
    }

    #[test]
    fn closed_sets() {
        let b2 = fixtures::b2();
        let bb = fixtures::product(&b2, &b2);
        let q = build_qspec(&bb).unwrap();
        let i1 = bb.span([vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let v = q.closed_set_of_elements(&[vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(v, vec![q.index_of(&i1).unwrap()]);
        assert_eq!(q.closed_set(&Subspace::zero(bb.field(), 4)).unwrap(), vec![0, 1]);
        assert!(q.closed_set(&Subspace::whole(bb.field(), 4)).unwrap().is_empty());
    }

    #[test]
    fn axioms_and_homeomorphism() {
        for a in fixtures::suite() {
            for l in [build_spec(&a.algebra).unwrap(), build_qspec(&a.algebra).unwrap()] {
                let r = verify_topology_axioms(&l).unwrap();
                assert!(r.passed(), "{} {}\n{r}", a.name, l.kind());
            }
            let h = check_homeomorphism(&a.algebra).unwrap();
            assert!(h.passed(), "{}\n{h}", a.name);
        }
    }

    #[test]
    fn homeomorphism_lines() {
        let h = check_homeomorphism(&fixtures::b2()).unwrap();
        assert_eq!(
            h.to_string(),
            "HOMEO spec_qspec PASS\nHOMEO order PASS\nHOMEO max_qmax PASS\nHOMEO radical_quasiradical PASS\n"
        );
    }

    #[test]
    fn good_open_examples() {
        let b2 = fixtures::b2();
        let q = build_qspec(&b2).unwrap();
        let g = good_open_decomposition(&q, &[0, 1]).unwrap();
        assert_eq!(g.y_f, vec![0]);
        assert!(g.holds());
        assert!(good_open_decomposition(&q, &[1, 0]).unwrap().holds());
        let z = good_open_decomposition(&q, &[0, 0]).unwrap();
        assert!(z.y_f.is_empty() && z.holds());
        assert!(good_open_decomposition(&build_spec(&b2).unwrap(), &[1, 0]).is_err());
    }

    #[test]
    fn density_examples() {
        let b2 = fixtures::b2();
        let bb = fixtures::product(&b2, &b2);
        let q = build_qspec(&bb).unwrap();
        let d = density_check(&q, &[1, 0, 0, 1]).unwrap();
        assert_eq!(d, Density { dense: false, zero_divisor: true });
        assert!(is_dense_good_open(&q, &[1, 0, 1, 0]).unwrap());
        assert!(!is_dense_good_open(&q, &[0, 1, 0, 0]).unwrap());
    }

    #[test]
    fn dump_format() {
        let b2 = fixtures::b2();
        let s = build_spec(&b2).unwrap();
        assert_eq!(s.dump(), vec!["POINT 0 dim=1 basis=[0,1]".to_string(), "LE 0 0".to_string()]);
    }
}
