//! Prime fields `F_p` and binomial coefficients modulo `p`.
//!
//! Elements are stored as canonical residues in `[0, p)`. With `p < 2^31`
//! every product fits in a `u64` before reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::hurwitz::MultiIndex;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    /// Number of elements, as a wide integer for bound computations.
    pub fn order(self) -> u128 {
        self.p as u128
    }

    pub fn element(self, value: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(value),
            field: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b * c`, the inner step of every dot product.
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Iterates `0, 1, ..., p-1`.
    pub fn residues(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A canonical residue tagged with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

/// Binary and unary operations of [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `a^b`, with `b` read as a natural number.
    Pow,
    /// `a^{-1}`; the second operand is ignored.
    Inv,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FieldElement) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::MixedField(self.field.p, other.field.p));
        }
        Ok(self.field)
    }

    pub fn arith(self, other: FieldElement, op: FieldOp) -> Result<FieldElement> {
        let k = self.check(other)?;
        let value = match op {
            FieldOp::Add => k.add(self.value, other.value),
            FieldOp::Sub => k.sub(self.value, other.value),
            FieldOp::Mul => k.mul(self.value, other.value),
            FieldOp::Div => k.mul(self.value, k.inv(other.value)?),
            FieldOp::Pow => k.pow(self.value, other.value as u64),
            FieldOp::Inv => k.inv(self.value)?,
        };
        Ok(FieldElement { value, field: k })
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement> {
        self.arith(other, FieldOp::Add)
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement> {
        self.arith(other, FieldOp::Sub)
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement> {
        self.arith(other, FieldOp::Mul)
    }

    pub fn try_div(self, other: FieldElement) -> Result<FieldElement> {
        self.arith(other, FieldOp::Div)
    }

    pub fn inv(self) -> Result<FieldElement> {
        self.arith(self, FieldOp::Inv)
    }

    pub fn pow(self, exp: u64) -> FieldElement {
        FieldElement {
            value: self.field.pow(self.value, exp),
            field: self.field,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `C(n, k) mod p` for `n, k < p`, by the multiplicative formula.
fn small_binomial(field: PrimeField, n: u64, k: u64) -> u32 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = field.mul(num, field.reduce_u64(n - i));
        den = field.mul(den, field.reduce_u64(i + 1));
    }
    // den is a product of integers below p, hence invertible.
    field.mul(num, field.inv(den).expect("nonzero denominator"))
}

/// `C(n, k) mod p` by Lucas' theorem on base-`p` digits.
pub fn binomial_mod_p(n: u64, k: u64, field: PrimeField) -> FieldElement {
    let p = field.characteristic() as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32;
    if k > n {
        return field.zero();
    }
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return field.zero();
        }
        acc = field.mul(acc, small_binomial(field, nd, kd));
        n /= p;
        k /= p;
    }
    FieldElement { value: acc, field }
}

/// Product over coordinates of `C(k_t, i_t) mod p`.
pub fn multiindex_binomial(k: &MultiIndex, i: &MultiIndex, field: PrimeField) -> Result<FieldElement> {
    if k.len() != i.len() {
        return Err(Error::LengthMismatch(k.len(), i.len()));
    }
    Ok(FieldElement {
        value: binomial_raw(k, i, field),
        field,
    })
}

/// Unchecked [`multiindex_binomial`] returning the raw residue.
pub(crate) fn binomial_raw(k: &MultiIndex, i: &MultiIndex, field: PrimeField) -> u32 {
    let mut acc = 1u32;
    for (&kt, &it) in k.coords().iter().zip(i.coords()) {
        let b = binomial_mod_p(kt as u64, it as u64, field).value;
        if b == 0 {
            return 0;
        }
        acc = field.mul(acc, b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Oracle: exact binomial via u128 Pascal rows, then reduce.
    fn pascal_rows(max: usize) -> Vec<Vec<u128>> {
        let mut rows: Vec<Vec<u128>> = vec![vec![1]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn rejects_composites_and_large() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(2_147_483_659).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let k5 = f(5);
        assert_eq!(k5.element(3).try_add(k5.element(4)).unwrap().value(), 2);
        assert_eq!(k5.element(2).inv().unwrap().value(), 3);
        let k2 = f(2);
        assert_eq!(k2.one().try_add(k2.one()).unwrap().value(), 0);
        assert_eq!(k5.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(k5.one().try_div(k5.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            k5.one().try_add(f(3).one()),
            Err(Error::MixedField(5, 3))
        );
        assert_eq!(k5.element(-3).value(), 2);
        assert_eq!(k5.element(2).pow(4).value(), 1);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_mod_p(5, 2, f(2)).value(), 0);
        assert_eq!(binomial_mod_p(5, 2, f(3)).value(), 1);
        assert_eq!(binomial_mod_p(17, 0, f(7)).value(), 1);
        assert_eq!(binomial_mod_p(3, 5, f(7)).value(), 0);
        let k = MultiIndex::new(vec![2, 1]);
        let i = MultiIndex::new(vec![1, 0]);
        assert_eq!(multiindex_binomial(&k, &i, f(2)).unwrap().value(), 0);
        let k = MultiIndex::new(vec![2, 2]);
        let i = MultiIndex::new(vec![1, 1]);
        assert_eq!(multiindex_binomial(&k, &i, f(3)).unwrap().value(), 1);
        assert_eq!(multiindex_binomial(&k, &k, f(3)).unwrap().value(), 1);
        assert_eq!(
            multiindex_binomial(&k, &MultiIndex::new(vec![1]), f(3)),
            Err(Error::LengthMismatch(2, 1))
        );
    }

    #[test]
    fn lucas_matches_exact_binomials_up_to_64() {
        let rows = pascal_rows(64);
        for p in [2u64, 3, 5, 7, 11, 13, 61, 67] {
            let k = f(p);
            for n in 0..=64u64 {
                for j in 0..=n + 2 {
                    let exact = if j > n { 0 } else { rows[n as usize][j as usize] };
                    assert_eq!(
                        binomial_mod_p(n, j, k).value() as u128,
                        exact % p as u128,
                        "C({n},{j}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn pascal_identity_mod_p() {
        for p in [2u64, 3, 5, 7] {
            let k = f(p);
            for n in 0..=64u64 {
                for j in 1..=n + 1 {
                    let lhs = binomial_mod_p(n + 1, j, k).value();
                    let rhs = k.add(binomial_mod_p(n, j, k).value(), binomial_mod_p(n, j - 1, k).value());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn field_and_triple() -> impl Strategy<Value = (PrimeField, u32, u32, u32)> {
            prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(65_537), Just(2_147_483_629)]
                .prop_flat_map(|p| {
                    let k = PrimeField::new(p).unwrap();
                    (Just(k), 0..p as u32, 0..p as u32, 0..p as u32)
                })
        }

        proptest! {
            #[test]
            fn field_axioms((k, a, b, c) in field_and_triple()) {
                prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                prop_assert_eq!(k.add(a, k.neg(a)), 0);
                prop_assert_eq!(k.sub(a, b), k.add(a, k.neg(b)));
                if a != 0 {
                    prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
            }
        }
    }
}
