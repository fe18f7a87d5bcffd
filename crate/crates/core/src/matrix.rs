//! Sparse square matrices over an exact field.

use crate::scalars::Field;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<K> {
    dim: usize,
    rows: Vec<BTreeMap<usize, K>>,
}

impl<K: Field> SparseMatrix<K> {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, K::one());
        }
        m
    }

    /// The matrix unit `e_ij` (zero-based indices).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(i, j, K::one());
        m
    }

    pub fn diagonal(entries: Vec<K>) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, x) in entries.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> K {
        self.rows[i].get(&j).cloned().unwrap_or_else(K::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: K) {
        if x.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &K) {
        if x.is_zero() {
            return;
        }
        let v = self.get(i, j).add(x);
        self.set(i, j, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &K)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, K> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(K::zero);
                    *e = e.add(&a.mul(b));
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_to(i, j, x);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&K::one().neg()))
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, x)| (*j, x.mul(c))).collect())
                .collect(),
        }
    }

    /// Kronecker product; index `(i, i')` maps to `i * other.dim + i'`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.dim * other.dim);
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                out.set(i * other.dim + k, j * other.dim + l, a.mul(b));
            }
        }
        out
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> SparseMatrix<L> {
        let mut out = SparseMatrix::zeros(self.dim);
        for (i, j, x) in self.entries() {
            out.set(i, j, f(x));
        }
        out
    }

    /// First nonzero entry, for witnesses.
    pub fn first_nonzero(&self) -> Option<(usize, usize, K)> {
        self.entries().next().map(|(i, j, x)| (i, j, x.clone()))
    }
}

impl<K: Field> fmt::Display for SparseMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<K> fmt::Debug for SparseMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nnz: usize = self.rows.iter().map(BTreeMap::len).sum();
        write!(f, "SparseMatrix(dim={}, nnz={nnz})", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QRat;

    #[test]
    fn kron_and_mul() {
        let e = SparseMatrix::<QRat>::unit(2, 0, 1);
        let f = SparseMatrix::<QRat>::unit(2, 1, 0);
        assert_eq!(e.mul(&f), SparseMatrix::unit(2, 0, 0));
        let ef = e.kron(&f);
        assert_eq!(ef.get(1, 2), QRat::one());
        assert_eq!(ef.nnz(), 1);
        let i2 = SparseMatrix::<QRat>::identity(2);
        assert_eq!(i2.kron(&i2), SparseMatrix::identity(4));
        assert!(e.mul(&e).is_zero());
    }
}
