//! Sparse Gaussian elimination over an exact field.
//!
//! Rows are vectors of `(column, value)` sorted by column. The pivot of a
//! stored row is its smallest column, normalized to 1; callers choose column
//! numbering so that "smallest index" is the pivot they want.

use crate::scalars::Field;
use std::collections::{BTreeMap, HashMap};

pub type SparseRow<K> = Vec<(usize, K)>;

#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: Vec<SparseRow<K>>,
    pivot_of: HashMap<usize, usize>,
}

impl<K: Field> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: SparseRow<K>) -> SparseRow<K> {
        let mut work: BTreeMap<usize, K> = BTreeMap::new();
        for (c, v) in row {
            accumulate(&mut work, c, v);
        }
        let mut out = Vec::new();
        while let Some((c, v)) = work.pop_first() {
            match self.pivot_of.get(&c) {
                Some(&ri) => {
                    for (cc, pv) in self.rows[ri].iter().skip(1) {
                        accumulate(&mut work, *cc, v.mul(pv).neg());
                    }
                }
                None => out.push((c, v)),
            }
        }
        out
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, row: SparseRow<K>) -> Option<usize> {
        let reduced = self.reduce(row);
        let (pc, pv) = reduced.first()?.clone();
        let inv = pv.inv().expect("nonzero pivot");
        let normalized: SparseRow<K> = reduced.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivot_of.insert(pc, self.rows.len());
        self.rows.push(normalized);
        Some(pc)
    }

    /// Fully reduced rows keyed by pivot column: no row contains another
    /// row's pivot.
    pub fn into_rref(self) -> BTreeMap<usize, SparseRow<K>> {
        let mut order: Vec<SparseRow<K>> = self.rows;
        order.sort_by_key(|r| std::cmp::Reverse(r[0].0));
        let mut done: Echelon<K> = Echelon::new();
        let mut out = BTreeMap::new();
        for row in order {
            let pc = row[0].0;
            let head = row[0].clone();
            let tail = done.reduce(row[1..].to_vec());
            let mut full = vec![head];
            full.extend(tail);
            done.pivot_of.insert(pc, done.rows.len());
            done.rows.push(full.clone());
            out.insert(pc, full);
        }
        out
    }
}

fn accumulate<K: Field>(work: &mut BTreeMap<usize, K>, c: usize, v: K) {
    if v.is_zero() {
        return;
    }
    match work.entry(c) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&v);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Outcome of solving `A x = b_j` for several right-hand sides at once.
#[derive(Clone, Debug)]
pub struct MultiSolve<K> {
    /// Rank of the coefficient matrix `A`.
    pub rank: usize,
    pub unknowns: usize,
    /// One entry per right-hand side: the unique solution, or `None` when the
    /// system is inconsistent or `A` is column-rank deficient.
    pub solutions: Vec<Option<Vec<K>>>,
    pub consistent: Vec<bool>,
}

/// Solves an overdetermined exact linear system with several right-hand
/// sides. `rows` yields `(coefficients, rhs values)` pairs.
pub fn solve_multi<K: Field>(
    unknowns: usize,
    rhs_count: usize,
    rows: impl IntoIterator<Item = (Vec<K>, Vec<K>)>,
) -> MultiSolve<K> {
    let mut ech = Echelon::new();
    for (coeffs, rhs) in rows {
        debug_assert_eq!(coeffs.len(), unknowns);
        debug_assert_eq!(rhs.len(), rhs_count);
        let row: SparseRow<K> = coeffs
            .into_iter()
            .enumerate()
            .chain(rhs.into_iter().enumerate().map(|(j, v)| (unknowns + j, v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        ech.insert(row);
    }
    let rref = ech.into_rref();
    let rank = rref.keys().filter(|&&c| c < unknowns).count();
    let mut consistent = vec![true; rhs_count];
    for (pc, row) in &rref {
        if *pc >= unknowns {
            for (c, _) in row {
                consistent[c - unknowns] = false;
            }
        }
    }
    let solutions = (0..rhs_count)
        .map(|j| {
            if !consistent[j] || rank < unknowns {
                return None;
            }
            let mut x = vec![K::zero(); unknowns];
            for (pc, row) in rref.range(..unknowns) {
                let v = row
                    .iter()
                    .find(|(c, _)| *c == unknowns + j)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(K::zero);
                x[*pc] = v;
            }
            Some(x)
        })
        .collect();
    MultiSolve {
        rank,
        unknowns,
        solutions,
        consistent,
    }
}

/// Rank of a set of dense vectors.
pub fn rank_of<K: Field>(vectors: impl IntoIterator<Item = Vec<K>>) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        let row = v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        ech.insert(row);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QRat;

    fn qi(c: i64) -> QRat {
        QRat::from_int(c)
    }

    #[test]
    fn rank_and_rref() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, qi(1)), (1, qi(2))]).is_some());
        assert!(e.insert(vec![(0, qi(2)), (1, qi(4))]).is_none());
        assert!(e.insert(vec![(1, qi(1)), (2, QRat::q())]).is_some());
        assert_eq!(e.rank(), 2);
        let rref = e.into_rref();
        // row 0 must no longer mention column 1
        assert!(rref[&0].iter().all(|(c, _)| *c != 1));
        assert_eq!(rref[&0][1], (2, QRat::q().mul(&qi(-2))));
    }

    #[test]
    fn multi_solve_detects_inconsistency() {
        // x = 1, 2x = 2 (rhs 0) ; x = 1, 2x = 3 (rhs 1)
        let rows = vec![(vec![qi(1)], vec![qi(1), qi(1)]), (vec![qi(2)], vec![qi(2), qi(3)])];
        let s = solve_multi(1, 2, rows);
        assert_eq!(s.rank, 1);
        assert_eq!(s.solutions[0], Some(vec![qi(1)]));
        assert_eq!(s.solutions[1], None);
        assert!(!s.consistent[1]);
    }

    #[test]
    fn multi_solve_rank_deficient() {
        let rows = vec![(vec![qi(1), qi(1)], vec![qi(1)])];
        let s = solve_multi(2, 1, rows);
        assert_eq!(s.rank, 1);
        assert!(s.consistent[0]);
        assert_eq!(s.solutions[0], None);
    }
}
