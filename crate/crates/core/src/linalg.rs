//! Exact linear algebra over `F_p`: reduced row-echelon subspaces, null
//! spaces and subspace enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A dense vector of canonical residues.
pub type Vector = Vec<u32>;

/// A subspace of `F_p^n`, stored by its reduced row-echelon basis.
///
/// The basis is canonical, so derived equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots; the standard vectors there span a
    /// complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduces `v` against the basis; the result vanishes on every pivot
    /// coordinate and is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vector {
        let k = self.field;
        let mut out = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = out[piv];
            if c != 0 {
                let nc = k.neg(c);
                for (o, &r) in out.iter_mut().zip(row) {
                    if r != 0 {
                        *o = k.mul_add(*o, nc, r);
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let k = self.field;
        let mut r = self.reduce(&v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = k.inv(r[piv]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = k.mul(*x, inv);
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                let nc = k.neg(c);
                for (o, &x) in row.iter_mut().zip(&r) {
                    if x != 0 {
                        *o = k.mul_add(*o, nc, x);
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(pos, piv);
        self.rows.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve sum a_i u_i - sum b_j w_j = 0 and collect sum a_i u_i.
        let k = self.field;
        let cols: Vec<Vector> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|w| w.iter().map(|&x| k.neg(x)).collect()))
            .collect();
        let matrix = transpose(&cols, self.ambient);
        let kernel = null_space(k, &matrix, cols.len());
        Subspace::span(
            k,
            self.ambient,
            kernel.into_iter().map(|c| combine(k, &self.rows, &c[..self.rows.len()], self.ambient)),
        )
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Renders the basis as `[r1;r2;...]` with comma-separated entries.
    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combine(field: PrimeField, vectors: &[Vector], coeffs: &[u32], len: usize) -> Vector {
    let mut out = vec![0; len];
    for (v, &c) in vectors.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = field.mul_add(*o, c, x);
        }
    }
    out
}

/// Turns a list of column vectors (each of length `rows`) into row-major form.
pub fn transpose(cols: &[Vector], rows: usize) -> Vec<Vector> {
    (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// Basis of `{x : M x = 0}` for a row-major `M` with `ncols` columns.
pub fn null_space(field: PrimeField, matrix: &[Vector], ncols: usize) -> Vec<Vector> {
    let k = field;
    let mut m: Vec<Vector> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(sel) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = k.inv(m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && other[col] != 0 {
                let nc = k.neg(other[col]);
                for (o, &x) in other.iter_mut().zip(&pivot_row) {
                    if x != 0 {
                        *o = k.mul_add(*o, nc, x);
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; ncols];
            x[f] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = k.neg(m[r][f]);
            }
            x
        })
        .collect()
}

/// Rank of a row-major matrix.
pub fn rank(field: PrimeField, matrix: &[Vector], ncols: usize) -> usize {
    ncols - null_space(field, matrix, ncols).len()
}

/// Solves `x M = target` for a row vector `x`, where `rows` are the rows of
/// `M`; returns one solution if any exists.
pub fn solve_combination(field: PrimeField, rows: &[Vector], target: &[u32]) -> Option<Vector> {
    // Columns of the system are the given rows; append -target as a last column.
    let len = target.len();
    let mut cols: Vec<Vector> = rows.to_vec();
    cols.push(target.iter().map(|&t| field.neg(t)).collect());
    let matrix = transpose(&cols, len);
    let kernel = null_space(field, &matrix, cols.len());
    let last = rows.len();
    let v = kernel.into_iter().find(|v| v[last] != 0)?;
    let inv = field.inv(v[last]).ok()?;
    Some(v[..last].iter().map(|&x| field.mul(x, inv)).collect())
}

/// Odometer over all vectors of `F_p^len`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllVectors {
    p: u32,
    current: Option<Vector>,
}

impl AllVectors {
    pub fn new(field: PrimeField, len: usize) -> Self {
        AllVectors {
            p: field.characteristic(),
            current: Some(vec![0; len]),
        }
    }
}

impl Iterator for AllVectors {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.p {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// `q^exp` saturating in `u128`.
pub fn count_vectors(field: PrimeField, len: usize) -> u128 {
    let q = field.order();
    let mut acc: u128 = 1;
    for _ in 0..len {
        acc = acc.saturating_mul(q);
    }
    acc
}

/// Number of subspaces of `F_q^n` (sum of Gaussian binomials).
pub fn count_subspaces(field: PrimeField, n: usize) -> u128 {
    let q = field.order();
    // Galois numbers satisfy G(n+1) = 2 G(n) + (q^n - 1) G(n-1).
    let (mut g_prev, mut g) = (1u128, 2u128);
    if n == 0 {
        return 1;
    }
    let mut qn: u128 = q;
    for _ in 1..n {
        let next = 2u128
            .saturating_mul(g)
            .saturating_add((qn - 1).saturating_mul(g_prev));
        g_prev = g;
        g = next;
        qn = qn.saturating_mul(q);
    }
    g
}

/// Every subspace of `F_p^n`, sorted by dimension and then basis.
pub fn enumerate_subspaces(field: PrimeField, n: usize, bound: u128) -> Result<Vec<Subspace>> {
    let total = count_subspaces(field, n);
    if total > bound {
        return Err(Error::EnumerationTooLarge { size: total, bound });
    }
    let mut out = Vec::with_capacity(total as usize);
    for dim in 0..=n {
        let mut level = Vec::new();
        for pivots in combinations(n, dim) {
            // free positions: (row r, column c) with c > pivot_r and c not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            for fill in AllVectors::new(field, free.len()) {
                let mut rows = vec![vec![0u32; n]; dim];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(&fill) {
                    rows[r][c] = v;
                }
                level.push(Subspace {
                    field,
                    ambient: n,
                    rows,
                    pivots: pivots.clone(),
                });
            }
        }
        level.sort_by(|a, b| a.rows.cmp(&b.rows));
        out.extend(level);
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
