//! The Taylor homomorphism `Φ(b)(k) = φ(∂^k b)` from a finite differential
//! algebra with a ring map `φ: B → F_p` into truncated Hurwitz series.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::findim::FinDimDiffAlgebra;
use crate::hurwitz::{MultiIndex, TruncatedHurwitzSeries};
use crate::linalg::{self, Subspace, Vector};
use crate::report::{Report, ReportLine};

/// A unital ring map `B → F_p`, stored by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMapToField {
    field: PrimeField,
    values: Vec<u32>,
}

impl RingMapToField {
    pub fn new(b: &FinDimDiffAlgebra, values: Vec<u32>) -> Result<Self> {
        let k = b.field();
        if values.len() != b.dim() {
            return Err(Error::LengthMismatch(b.dim(), values.len()));
        }
        let values: Vec<u32> = values.into_iter().map(|v| k.reduce_u64(v as u64)).collect();
        let phi = RingMapToField { field: k, values };
        if phi.apply(b.unit()) != 1 {
            return Err(Error::InvalidRingMap("unit is not sent to 1".into()));
        }
        for i in 0..b.dim() {
            for j in i..b.dim() {
                let lhs = phi.apply(&b.mul_table()[i][j]);
                let rhs = k.mul(phi.values[i], phi.values[j]);
                if lhs != rhs {
                    return Err(Error::InvalidRingMap(format!(
                        "not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(phi)
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn apply(&self, x: &[u32]) -> u32 {
        x.iter()
            .zip(&self.values)
            .fold(0, |acc, (&a, &v)| self.field.mul_add(acc, a, v))
    }
}

/// The quotient map `Q → Q/m = F_p` of a quasifield.
pub fn residue_map(q: &FinDimDiffAlgebra) -> Result<RingMapToField> {
    let qf = q.quasifield()?.ok_or(Error::NotQuasifield)?;
    let m = qf.maximal_ideal;
    let residue_dim = q.dim() - m.dim();
    if residue_dim != 1 {
        return Err(Error::ResidueNotPrimeField(residue_dim));
    }
    let k = q.field();
    let j = m.complement_coords()[0];
    let one = m.reduce(q.unit())[j];
    let inv = k.inv(one)?;
    let values = (0..q.dim())
        .map(|i| k.mul(m.reduce(&q.basis_vector(i))[j], inv))
        .collect();
    RingMapToField::new(q, values)
}

fn apply_word(b: &FinDimDiffAlgebra, x: &[u32], k: &MultiIndex) -> Vector {
    let mut y = x.to_vec();
    for t in k.as_word() {
        y = b.derive(&y, t);
    }
    y
}

/// `Φ(x)` at precision `n`, straight from the coefficient formula.
pub fn taylor_image(b: &FinDimDiffAlgebra, phi: &RingMapToField, x: &[u32], n: u32) -> TruncatedHurwitzSeries {
    let terms = MultiIndex::all_up_to(b.m(), n)
        .into_iter()
        .map(|k| {
            let v = phi.apply(&apply_word(b, x, &k));
            (k, v as i64)
        });
    TruncatedHurwitzSeries::from_terms(b.field(), b.m(), n, terms).expect("indices have length m")
}

/// `Φ` as the table of images of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorTable {
    pub rows: Vec<TruncatedHurwitzSeries>,
}

impl TaylorTable {
    /// `Φ(x)` by linearity.
    pub fn apply(&self, x: &[u32]) -> Result<TruncatedHurwitzSeries> {
        let first = self.rows.first().ok_or_else(|| Error::ShapeMismatch("empty table".into()))?;
        if x.len() != self.rows.len() {
            return Err(Error::LengthMismatch(self.rows.len(), x.len()));
        }
        let mut acc = TruncatedHurwitzSeries::zero(first.field(), first.m(), first.precision());
        for (row, &c) in self.rows.iter().zip(x) {
            acc = acc.add(&row.scale(c))?;
        }
        Ok(acc)
    }

    /// The coefficient matrix, one dense row per basis element.
    pub fn matrix(&self) -> Vec<Vector> {
        self.rows.iter().map(TruncatedHurwitzSeries::to_dense).collect()
    }
}

pub fn taylor_hom(b: &FinDimDiffAlgebra, phi: &RingMapToField, n: u32) -> TaylorTable {
    let rows = (0..b.dim())
        .map(|i| taylor_image(b, phi, &b.basis_vector(i), n))
        .collect();
    TaylorTable { rows }
}

/// `ker Φ` at precision `n`, i.e. `∩_{ord k ≤ n} ker(φ ∘ ∂^k)`.
pub fn taylor_kernel(b: &FinDimDiffAlgebra, phi: &RingMapToField, n: u32) -> Subspace {
    let table = taylor_hom(b, phi, n);
    let cols = table.matrix();
    let width = MultiIndex::count_up_to(b.m(), n) as usize;
    let matrix = linalg::transpose(&cols, width);
    let kernel = linalg::null_space(b.field(), &matrix, b.dim());
    b.span(kernel)
}

fn clause(name: &str, witness: Option<String>) -> ReportLine {
    let line = ReportLine::check("CLAUSE", &[name], witness.is_none());
    match witness {
        Some(w) => line.with_detail(w),
        None => line,
    }
}

/// Checks the universal diagram for `Φ` at precision `n`:
/// `projection` (`π ∘ Φ = φ`), `multiplicative` and `additive` on basis
/// pairs, `differential` (`Φ ∘ ∂_t = ∂_t ∘ Φ` at `n - 1`) and `uniqueness`
/// (`π(∂^k Φ(b)) = φ(∂^k b)` for every `ord k ≤ n`). Ends with
/// `UNIVERSAL PASS|FAIL`.
pub fn check_universal(b: &FinDimDiffAlgebra, phi: &RingMapToField, n: u32) -> Result<Report> {
    let table = taylor_hom(b, phi, n);
    let d = b.dim();
    let e: Vec<Vector> = (0..d).map(|i| b.basis_vector(i)).collect();
    let mut report = Report::new();

    let bad = (0..d).find(|&i| table.rows[i].pi().value() != phi.values()[i]);
    report.push(clause("projection", bad.map(|i| format!("basis {i}"))));

    let mut mul_w = None;
    let mut add_w = None;
    for i in 0..d {
        for j in i..d {
            let prod = taylor_image(b, phi, &b.mul(&e[i], &e[j]), n);
            if !prod.agrees_with(&table.rows[i].mul(&table.rows[j])?)?.equal {
                mul_w.get_or_insert(format!("basis {i} {j}"));
            }
            let sum = taylor_image(b, phi, &b.add(&e[i], &e[j]), n);
            if !sum.agrees_with(&table.rows[i].add(&table.rows[j])?)?.equal {
                add_w.get_or_insert(format!("basis {i} {j}"));
            }
        }
    }
    report.push(clause("multiplicative", mul_w));
    report.push(clause("additive", add_w));

    let mut diff_w = None;
    if n == 0 {
        diff_w = Some("precision 0 leaves no window".to_string());
    } else {
        for t in 1..=b.m() {
            for i in 0..d {
                let lhs = taylor_image(b, phi, &b.derive(&e[i], t), n - 1);
                let rhs = table.rows[i].derive(t)?;
                if !lhs.agrees_with(&rhs)?.equal {
                    diff_w.get_or_insert(format!("derivation {t} basis {i}"));
                }
            }
        }
    }
    report.push(clause("differential", diff_w));

    let mut uniq_w = None;
    for i in 0..d {
        for idx in MultiIndex::all_up_to(b.m(), n) {
            let from_series = table.rows[i].apply_theta(&idx)?.pi().value();
            let from_algebra = phi.apply(&apply_word(b, &e[i], &idx));
            if from_series != from_algebra || table.rows[i].coeff(&idx) != from_algebra {
                uniq_w.get_or_insert(format!("basis {i} index {idx}"));
            }
        }
    }
    report.push(clause("uniqueness", uniq_w));

    let ok = report.passed();
    report.push(ReportLine {
        tag: "UNIVERSAL".into(),
        subject: Vec::new(),
        outcome: Some(ok),
        detail: Vec::new(),
    });
    Ok(report)
}

/// `ROW <name> -> <series body>` lines of the Taylor table.
pub fn table_lines(b: &FinDimDiffAlgebra, table: &TaylorTable) -> Vec<String> {
    b.names()
        .iter()
        .zip(&table.rows)
        .map(|(name, row)| format!("ROW {name} -> {}", row.body()))
        .collect()
}

/// The image of `Φ` is closed under products and derivations and `Φ` is
/// injective at precision `n`.
pub fn is_embedding(b: &FinDimDiffAlgebra, phi: &RingMapToField, n: u32) -> Result<bool> {
    if !taylor_kernel(b, phi, n).is_zero() {
        return Ok(false);
    }
    let table = taylor_hom(b, phi, n);
    let image = Subspace::span(b.field(), table.matrix().first().map_or(0, Vec::len), table.matrix());
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            if !image.contains(&table.rows[i].mul(&table.rows[j])?.to_dense()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn series(text: &str) -> TruncatedHurwitzSeries {
        TruncatedHurwitzSeries::parse(text).unwrap()
    }

    #[test]
    fn residue_maps() {
        let b2 = fixtures::b2();
        assert_eq!(residue_map(&b2).unwrap().values(), &[1, 0]);
        assert_eq!(residue_map(&fixtures::prime_field(3)).unwrap().values(), &[1]);
        assert_eq!(residue_map(&fixtures::hurwitz_truncation(2, 3)).unwrap().values(), &[1, 0, 0]);
        assert_eq!(residue_map(&fixtures::dual_numbers(2)), Err(Error::NotQuasifield));
    }

    #[test]
    fn ring_map_validation() {
        let b2 = fixtures::b2();
        assert!(matches!(RingMapToField::new(&b2, vec![1, 1]), Err(Error::InvalidRingMap(_))));
        assert!(matches!(RingMapToField::new(&b2, vec![0, 0]), Err(Error::InvalidRingMap(_))));
        assert_eq!(RingMapToField::new(&b2, vec![1]), Err(Error::LengthMismatch(2, 1)));
    }

    #[test]
    fn b2_table() {
        let b2 = fixtures::b2();
        let phi = residue_map(&b2).unwrap();
        let t = taylor_hom(&b2, &phi, 4);
        assert_eq!(t.rows[0], series("p=2 m=1 N=4 : [0]=1"));
        assert_eq!(t.rows[1], series("p=2 m=1 N=4 : [1]=1"));
        assert_eq!(t.apply(&[1, 1]).unwrap(), series("p=2 m=1 N=4 : [0]=1 [1]=1"));
        assert_eq!(table_lines(&b2, &t), vec!["ROW 1 -> [0]=1", "ROW eps -> [1]=1"]);
        let r = check_universal(&b2, &phi, 4).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.lines.last().unwrap().to_string(), "UNIVERSAL PASS");
        assert!(is_embedding(&b2, &phi, 4).unwrap());
    }

    #[test]
    fn zero_derivation_gives_constants() {
        let d2 = fixtures::dual_numbers(2);
        let phi = RingMapToField::new(&d2, vec![1, 0]).unwrap();
        let t = taylor_hom(&d2, &phi, 3);
        assert_eq!(t.rows[0], TruncatedHurwitzSeries::one(d2.field(), 1, 3));
        assert!(t.rows[1].is_zero());
        assert!(check_universal(&d2, &phi, 4).unwrap().passed());
        assert_eq!(taylor_kernel(&d2, &phi, 4), d2.span([vec![0, 1]]));
    }

    #[test]
    fn product_kernel() {
        let b2 = fixtures::b2();
        let bb = fixtures::product(&b2, &b2);
        let phi = RingMapToField::new(&bb, vec![1, 0, 0, 0]).unwrap();
        assert!(check_universal(&bb, &phi, 4).unwrap().passed());
        assert_eq!(taylor_kernel(&bb, &phi, 4), bb.span([vec![0, 0, 1, 0], vec![0, 0, 0, 1]]));
    }

    #[test]
    fn invalid_truncation_breaks_the_diagram() {
        let h = fixtures::hurwitz_truncation(2, 3);
        let phi = residue_map(&h).unwrap();
        let r = check_universal(&h, &phi, 4).unwrap();
        assert!(!r.passed());
        assert!(r.to_string().contains("CLAUSE multiplicative FAIL basis 1 2"));
    }

    #[test]
    fn simple_fixtures_embed() {
        for a in fixtures::suite() {
            if a.algebra.is_simple().unwrap() {
                let phi = residue_map(&a.algebra).unwrap();
                assert!(is_embedding(&a.algebra, &phi, a.algebra.dim() as u32).unwrap(), "{}", a.name);
                assert!(check_universal(&a.algebra, &phi, 4).unwrap().passed(), "{}", a.name);
            }
        }
    }
}
