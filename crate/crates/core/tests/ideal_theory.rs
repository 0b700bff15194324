use charp_diffalg::fixtures::{self, NamedAlgebra};
use charp_diffalg::linalg::AllVectors;
use charp_diffalg::{FinDimDiffAlgebra, Subspace, Vector};

/// Nilpotency by repeated multiplication, independent of `pow`.
fn nilpotent_by_powers(a: &FinDimDiffAlgebra, x: &[u32]) -> bool {
    let zero = a.zero();
    let mut acc = x.to_vec();
    for _ in 0..=a.dim() {
        if acc == zero {
            return true;
        }
        acc = a.mul(&acc, x);
    }
    false
}

/// Every `θx` with `ord θ ≤ dim` is nilpotent, checked word by word.
fn diff_nilpotent_by_words(a: &FinDimDiffAlgebra, x: &[u32]) -> bool {
    let mut level = vec![x.to_vec()];
    for _ in 0..=a.dim() {
        if !level.iter().all(|y| nilpotent_by_powers(a, y)) {
            return false;
        }
        level = level
            .iter()
            .flat_map(|y| (1..=a.m()).map(move |t| a.derive(y, t)))
            .collect();
    }
    true
}

fn elements(a: &FinDimDiffAlgebra) -> Vec<Vector> {
    AllVectors::new(a.field(), a.dim()).collect()
}

fn suite() -> Vec<NamedAlgebra> {
    fixtures::suite()
}

#[test]
fn nilradical_matches_power_oracle() {
    for NamedAlgebra { name, algebra: a } in suite() {
        let nil = a.nilradical().unwrap();
        for x in elements(&a) {
            assert_eq!(nil.contains(&x), nilpotent_by_powers(&a, &x), "{name} {x:?}");
        }
    }
}

#[test]
fn differential_nilpotents_match_word_oracle() {
    for NamedAlgebra { name, algebra: a } in suite() {
        let rad0 = a.quasiradical_rad(&Subspace::zero(a.field(), a.dim())).unwrap();
        for x in elements(&a) {
            let oracle = diff_nilpotent_by_words(&a, &x);
            assert_eq!(a.is_diff_nilpotent(&x), oracle, "{name} {x:?}");
            assert_eq!(rad0.contains(&x), oracle, "{name} {x:?}");
        }
    }
}

#[test]
fn pi_and_r_are_inverse_bijections() {
    for NamedAlgebra { name, algebra: a } in suite() {
        for t in a.enumerate_ideals().unwrap() {
            if a.radical_r(&t).unwrap() == t {
                let u = a.pi_map(&t).unwrap();
                assert_eq!(a.radical_r(&u).unwrap(), t, "{name}");
                assert_eq!(a.quasiradical_rad(&u).unwrap(), u, "{name}");
            }
        }
        for u in a.enumerate_differential_ideals().unwrap() {
            if a.quasiradical_rad(&u).unwrap() == u {
                assert_eq!(a.pi_map(&a.radical_r(&u).unwrap()).unwrap(), u, "{name}");
            }
        }
    }
}

#[test]
fn rad_is_the_least_quasiradical_ideal_above() {
    for NamedAlgebra { name, algebra: a } in suite() {
        let diff = a.enumerate_differential_ideals().unwrap();
        let quasiradical: Vec<&Subspace> = diff
            .iter()
            .filter(|u| a.classify_ideal(u).unwrap().is_quasiradical == Some(true))
            .collect();
        for ideal in &diff {
            let least = quasiradical
                .iter()
                .filter(|u| ideal.is_subspace_of(u))
                .min_by_key(|u| u.dim())
                .unwrap();
            assert_eq!(a.quasiradical_rad(ideal).unwrap(), **least, "{name}");
        }
    }
}

#[test]
fn quasiprime_is_quasiradical_and_primary_via_quotients() {
    for NamedAlgebra { name, algebra: a } in suite() {
        for q in a.enumerate_differential_ideals().unwrap() {
            let c = a.classify_ideal(&q).unwrap();
            if q.is_whole() {
                assert_eq!(c.is_quasiprime, Some(false), "{name}");
                continue;
            }
            let quo = a.quotient(&q).unwrap();
            assert!(quo.validate().is_valid(), "{name}");
            let els = elements(&quo);
            let zero = quo.zero();
            let quasiradical = els
                .iter()
                .all(|x| *x == zero || !diff_nilpotent_by_words(&quo, x));
            let primary = els.iter().all(|x| {
                let zd = *x != zero && els.iter().any(|y| *y != zero && quo.mul(x, y) == zero);
                !zd || nilpotent_by_powers(&quo, x)
            }) && els.len() > 1;
            assert_eq!(c.is_quasiradical, Some(quasiradical), "{name} {}", q.render());
            assert_eq!(c.is_primary, primary, "{name} {}", q.render());
            assert_eq!(c.is_quasiprime, Some(quasiradical && primary), "{name} {}", q.render());
        }
    }
}

#[test]
fn non_differential_ideals_have_no_quasi_flags() {
    let b2 = fixtures::b2();
    let c = b2.classify_ideal(&b2.span([vec![0, 1]])).unwrap();
    assert_eq!((c.is_quasiradical, c.is_quasiprime, c.is_quasimaximal), (None, None, None));
}

#[test]
fn prime_and_maximal_match_quotient_fields() {
    for NamedAlgebra { name, algebra: a } in suite() {
        for q in a.enumerate_ideals().unwrap() {
            let c = a.classify_ideal(&q).unwrap();
            let quo = a.ring_quotient(&q);
            let els: Vec<Vector> = quo.elements().collect();
            let zero = vec![0; quo.dim()];
            let domain = !els.is_empty()
                && quo.dim() > 0
                && els.iter().all(|x| *x == zero || els.iter().all(|y| *y == zero || quo.mul(x, y) != zero));
            let one = quo.project(a.unit());
            let field = quo.dim() > 0 && els.iter().all(|x| *x == zero || els.iter().any(|y| quo.mul(x, y) == one));
            assert_eq!(c.is_prime, domain, "{name} {}", q.render());
            assert_eq!(c.is_maximal, field, "{name} {}", q.render());
        }
    }
}
