//! Small named algebras used by the test suites, the benches and the CLI.

use crate::field::{binomial_mod_p, PrimeField};
use crate::findim::FinDimDiffAlgebra;
use crate::linalg::Vector;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p as u64).expect("fixture characteristic is prime")
}

fn unit_vec(d: usize, i: usize) -> Vector {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// `F_p` with one zero derivation.
pub fn prime_field(p: u32) -> FinDimDiffAlgebra {
    FinDimDiffAlgebra::new(field(p), vec!["1".into()], vec![vec![vec![1]]], vec![vec![vec![0]]])
        .expect("well-shaped table")
}

/// `F_2[eps]/(eps^2)` with `∂eps = 1`.
pub fn b2() -> FinDimDiffAlgebra {
    let t = hurwitz_truncation(2, 2);
    FinDimDiffAlgebra::new(
        t.field(),
        vec!["1".into(), "eps".into()],
        t.mul_table().to_vec(),
        t.derivation_matrices().to_vec(),
    )
    .expect("well-shaped table")
}

/// `F_p[eps]/(eps^2)` with the zero derivation.
pub fn dual_numbers(p: u32) -> FinDimDiffAlgebra {
    let k = field(p);
    let mul = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![0, 0]],
    ];
    FinDimDiffAlgebra::new(k, vec!["1".into(), "eps".into()], mul, vec![vec![vec![0, 0], vec![0, 0]]])
        .expect("well-shaped table")
}

/// `H F_p / (δ_k : k ≥ n)` with `δ_i δ_j = C(i+j, i) δ_{i+j}` and
/// `∂δ_i = δ_{i-1}`. A differential algebra only when `n` is a power of `p`;
/// other values are built anyway so that validation can reject them.
pub fn hurwitz_truncation(p: u32, n: usize) -> FinDimDiffAlgebra {
    let k = field(p);
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![0; n];
                    if i + j < n {
                        v[i + j] = binomial_mod_p((i + j) as u64, i as u64, k).value();
                    }
                    v
                })
                .collect()
        })
        .collect();
    let der = (0..n)
        .map(|i| if i == 0 { vec![0; n] } else { unit_vec(n, i - 1) })
        .collect();
    let names = (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { format!("d{i}") })
        .collect();
    FinDimDiffAlgebra::new(k, names, mul, vec![der]).expect("well-shaped table")
}

/// Componentwise product of two fixtures.
pub fn product(a: &FinDimDiffAlgebra, b: &FinDimDiffAlgebra) -> FinDimDiffAlgebra {
    FinDimDiffAlgebra::product(a, b).expect("compatible factors")
}

#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub name: &'static str,
    pub algebra: FinDimDiffAlgebra,
}

/// Valid fixtures of dimension at most 5 over `F_2` and at most 3 over `F_3`.
pub fn suite() -> Vec<NamedAlgebra> {
    let b2 = b2();
    let entries = [
        ("F2", prime_field(2)),
        ("F3", prime_field(3)),
        ("B2", b2.clone()),
        ("D2", dual_numbers(2)),
        ("D3", dual_numbers(3)),
        ("H2_2", hurwitz_truncation(2, 2)),
        ("H2_4", hurwitz_truncation(2, 4)),
        ("H3_3", hurwitz_truncation(3, 3)),
        ("B2xB2", product(&b2, &b2)),
        ("B2xF2", product(&b2, &prime_field(2))),
        ("D2xB2", product(&dual_numbers(2), &b2)),
        ("F3xF3", product(&prime_field(3), &prime_field(3))),
        ("B2xB2xF2", product(&product(&b2, &b2), &prime_field(2))),
        ("H2_4xF2", product(&hurwitz_truncation(2, 4), &prime_field(2))),
    ];
    entries
        .into_iter()
        .map(|(name, algebra)| NamedAlgebra { name, algebra })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_valid_and_small() {
        for a in suite() {
            assert!(a.algebra.validate().is_valid(), "{}", a.name);
            let limit = if a.algebra.field().characteristic() == 2 { 5 } else { 3 };
            assert!(a.algebra.dim() <= limit, "{}", a.name);
        }
    }

    #[test]
    fn b2_table() {
        let a = b2();
        assert_eq!(a.unit(), &[1, 0]);
        assert_eq!(a.mul_table()[1][1], vec![0, 0]);
        assert_eq!(a.derivation_matrices()[0][1], vec![1, 0]);
    }
}
