//! Ground truth for graded dimensions of quotient algebras, computed by exact
//! row reduction directly from the relations (never from a rewrite system).

use super::linalg::{Echelon, SparseRow};
use super::rewrite::RewriteSystem;
use super::{Gen, NCPoly, Word};
use crate::scalars::Field;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("relation is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("relation uses a generator outside the supplied alphabet: {0}")]
    ForeignGenerator(String),
}

fn all_words(gens: &[Gen], d: usize) -> Vec<Word> {
    let mut layer = vec![Word::empty()];
    for _ in 0..d {
        layer = layer
            .iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut nw = w.clone();
                    nw.push(g);
                    nw
                })
            })
            .collect();
    }
    layer
}

/// Dimension of the degree-`d` part of `F<gens> / (relations)` together with
/// a complementary set of basis words, by spanning every `w1 * r * w2` of
/// length `d` and row-reducing. Word length is the grading.
pub fn linearize_degree<K: Field>(
    relations: &[NCPoly<K>],
    gens: &[Gen],
    d: usize,
) -> Result<(usize, Vec<Word>), OracleError> {
    let mut lens = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let l = r
            .homogeneous_len()
            .ok_or_else(|| OracleError::Inhomogeneous(r.to_string()))?;
        if r.terms().any(|(w, _)| w.letters().iter().any(|g| !gens.contains(g))) {
            return Err(OracleError::ForeignGenerator(r.to_string()));
        }
        lens.push((l, r));
    }
    let mut words = all_words(gens, d);
    words.sort_by(|a, b| b.cmp(a));
    let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut ech = Echelon::<K>::new();
    for (l, r) in &lens {
        if *l > d {
            continue;
        }
        for i in 0..=(d - l) {
            let lefts = all_words(gens, i);
            let rights = all_words(gens, d - l - i);
            for a in &lefts {
                for b in &rights {
                    let row: SparseRow<K> = r
                        .terms()
                        .map(|(w, c)| (col[&a.concat(w).concat(b)], c.clone()))
                        .collect();
                    ech.insert(row);
                }
            }
        }
    }
    let basis: Vec<Word> = words
        .iter()
        .enumerate()
        .filter(|(i, _)| !ech.is_pivot(*i))
        .map(|(_, w)| w.clone())
        .rev()
        .collect();
    Ok((words.len() - ech.rank(), basis))
}

struct Level<K> {
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `(basis index, generator index)` -> class of `basis word * generator`
    /// in the next level, once that level is built.
    step: HashMap<(usize, usize), SparseRow<K>>,
}

/// Degreewise quotient `A_d = (A_{d-1} (x) V) / (A_{d-l} * R)` built level by
/// level. Exact, and sized by the quotient rather than by the free algebra.
pub struct GradedQuotient<'a, K> {
    gens: Vec<Gen>,
    relations: Vec<(usize, NCPoly<K>)>,
    keep: &'a dyn Fn(&Word) -> bool,
    levels: Vec<Level<K>>,
}

impl<'a, K: Field> GradedQuotient<'a, K> {
    /// `keep` restricts to a prefix-closed set of words that is a union of
    /// homogeneous components of the relations (for example a bidegree box).
    pub fn new(
        relations: &[NCPoly<K>],
        gens: &[Gen],
        keep: &'a dyn Fn(&Word) -> bool,
    ) -> Result<Self, OracleError> {
        let mut rels = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let l = r
                .homogeneous_len()
                .ok_or_else(|| OracleError::Inhomogeneous(r.to_string()))?;
            if r.terms().any(|(w, _)| w.letters().iter().any(|g| !gens.contains(g))) {
                return Err(OracleError::ForeignGenerator(r.to_string()));
            }
            rels.push((l, r.clone()));
        }
        let level0 = Level {
            basis: vec![Word::empty()],
            index: HashMap::from([(Word::empty(), 0)]),
            step: HashMap::new(),
        };
        Ok(GradedQuotient {
            gens: gens.to_vec(),
            relations: rels,
            keep,
            levels: vec![level0],
        })
    }

    fn gen_index(&self, g: Gen) -> usize {
        self.gens.iter().position(|&x| x == g).expect("checked alphabet")
    }

    /// Class in level `j + len(tail)` of `basis_j[b] * tail`.
    fn chain(&self, j: usize, b: usize, tail: &[Gen]) -> SparseRow<K> {
        let mut v: SparseRow<K> = vec![(b, K::one())];
        for (k, &g) in tail.iter().enumerate() {
            let gi = self.gen_index(g);
            let mut acc: BTreeMap<usize, K> = BTreeMap::new();
            for (bi, c) in &v {
                if let Some(row) = self.levels[j + k].step.get(&(*bi, gi)) {
                    for (ni, x) in row {
                        let e = acc.entry(*ni).or_insert_with(K::zero);
                        *e = e.add(&c.mul(x));
                    }
                }
            }
            v = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        v
    }

    fn build_next(&mut self) {
        let d = self.levels.len();
        let prev = &self.levels[d - 1];
        let ng = self.gens.len();
        let mut cols: Vec<(Word, usize, usize)> = Vec::new();
        for (b, w) in prev.basis.iter().enumerate() {
            for (gi, &g) in self.gens.iter().enumerate() {
                let mut nw = w.clone();
                nw.push(g);
                if (self.keep)(&nw) {
                    cols.push((nw, b, gi));
                }
            }
        }
        cols.sort_by(|a, b| b.0.cmp(&a.0));
        let col_of: HashMap<(usize, usize), usize> = cols
            .iter()
            .enumerate()
            .map(|(i, (_, b, gi))| ((*b, *gi), i))
            .collect();
        let mut ech = Echelon::<K>::new();
        for (l, r) in &self.relations {
            if *l > d {
                continue;
            }
            let base = &self.levels[d - l];
            for (u, uw) in base.basis.iter().enumerate() {
                if !r.terms().all(|(w, _)| (self.keep)(&uw.concat(w))) {
                    continue;
                }
                let mut row: BTreeMap<usize, K> = BTreeMap::new();
                for (w, c) in r.terms() {
                    let letters = w.letters();
                    let (last, init) = letters.split_last().expect("nonconstant relation");
                    let v = self.chain(d - l, u, init);
                    let gi = self.gen_index(*last);
                    for (bi, x) in v {
                        if let Some(&ci) = col_of.get(&(bi, gi)) {
                            let e = row.entry(ci).or_insert_with(K::zero);
                            *e = e.add(&c.mul(&x));
                        }
                    }
                }
                let row: SparseRow<K> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
        let rref = ech.into_rref();
        // non-pivot columns, ascending by word, become the new basis
        let mut new_index_of_col: HashMap<usize, usize> = HashMap::new();
        let mut basis = Vec::new();
        for ci in (0..cols.len()).rev() {
            if !rref.contains_key(&ci) {
                new_index_of_col.insert(ci, basis.len());
                basis.push(cols[ci].0.clone());
            }
        }
        let mut step = HashMap::new();
        for (ci, (_, b, gi)) in cols.iter().enumerate() {
            let class: SparseRow<K> = match rref.get(&ci) {
                Some(row) => row[1..]
                    .iter()
                    .map(|(c, x)| (new_index_of_col[c], x.neg()))
                    .collect(),
                None => vec![(new_index_of_col[&ci], K::one())],
            };
            step.insert((*b, *gi), class);
        }
        debug_assert!(step.len() <= prev.basis.len() * ng);
        self.levels[d - 1].step = step;
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        self.levels.push(Level {
            basis,
            index,
            step: HashMap::new(),
        });
    }

    /// Complement basis words of length `d`.
    pub fn basis(&mut self, d: usize) -> &[Word] {
        while self.levels.len() <= d {
            self.build_next();
        }
        &self.levels[d].basis
    }

    pub fn dimension(&mut self, d: usize) -> usize {
        self.basis(d).len()
    }

    /// True if `w` is one of the complement basis words.
    pub fn is_basis_word(&mut self, w: &Word) -> bool {
        self.basis(w.len());
        self.levels[w.len()].index.contains_key(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfluenceRow {
    pub degree: usize,
    pub normal_words: usize,
    pub oracle_dim: usize,
    pub matches: bool,
}

/// Compares normal-word counts of `system` with oracle dimensions of the
/// quotient by `relations`, degree by degree.
pub fn confluence_report<K: Field>(
    system: &RewriteSystem<K>,
    relations: &[NCPoly<K>],
    gens: &[Gen],
    maxdeg: usize,
) -> Result<Vec<ConfluenceRow>, OracleError> {
    let keep = |_: &Word| true;
    let mut oracle = GradedQuotient::new(relations, gens, &keep)?;
    Ok((0..=maxdeg)
        .map(|d| {
            let normal_words = system.normal_words(gens, d, &keep).len();
            let oracle_dim = oracle.dimension(d);
            ConfluenceRow {
                degree: d,
                normal_words,
                oracle_dim,
                matches: normal_words == oracle_dim,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::derive_rules;
    use crate::scalars::QRat;

    fn x() -> Gen {
        Gen::T { a: 2, alpha: 1 }
    }
    fn y() -> Gen {
        Gen::T { a: 1, alpha: 1 }
    }

    fn plane() -> NCPoly<QRat> {
        NCPoly::from_word(Word::from_gens(&[x(), y()]))
            .sub(&NCPoly::term(QRat::q(), Word::from_gens(&[y(), x()])))
    }

    #[test]
    fn quantum_plane_degree_two() {
        let (dim, basis) = linearize_degree(&[plane()], &[y(), x()], 2).unwrap();
        assert_eq!(dim, 3);
        assert_eq!(basis.len(), 3);
        assert!(!basis.contains(&Word::from_gens(&[x(), y()])));
    }

    #[test]
    fn free_algebra_and_degree_zero() {
        let gens = [y(), x(), Gen::T { a: 3, alpha: 1 }];
        assert_eq!(linearize_degree::<QRat>(&[], &gens, 3).unwrap().0, 27);
        assert_eq!(linearize_degree(&[plane()], &gens, 0).unwrap().0, 1);
    }

    #[test]
    fn inhomogeneous_is_error() {
        let r = plane().add(&NCPoly::gen(x()));
        assert!(matches!(
            linearize_degree(&[r], &[x(), y()], 2),
            Err(OracleError::Inhomogeneous(_))
        ));
    }

    #[test]
    fn incremental_agrees_with_full_span() {
        // a cubic-growth example: q-commuting pair plus a nilpotent square
        let gens = [y(), x(), Gen::T { a: 3, alpha: 1 }];
        let z = gens[2];
        let rels = vec![
            plane(),
            NCPoly::from_word(Word::from_gens(&[z, z])),
            NCPoly::from_word(Word::from_gens(&[z, x()]))
                .sub(&NCPoly::term(QRat::q_pow(-1), Word::from_gens(&[x(), z])))
                .add(&NCPoly::from_word(Word::from_gens(&[y(), z]))),
        ];
        let keep = |_: &Word| true;
        let mut inc = GradedQuotient::new(&rels, &gens, &keep).unwrap();
        for d in 0..=4 {
            assert_eq!(inc.dimension(d), linearize_degree(&rels, &gens, d).unwrap().0, "d={d}");
        }
    }

    #[test]
    fn confluence_of_quantum_plane() {
        let sys = derive_rules(&[plane()]).unwrap();
        let rows = confluence_report(&sys, &[plane()], &[y(), x()], 4).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.oracle_dim).collect();
        assert_eq!(dims, vec![1, 2, 3, 4, 5]);
        assert!(rows.iter().all(|r| r.matches));
    }

    #[test]
    fn free_algebra_confluence() {
        let sys = RewriteSystem::<QRat>::empty();
        let rows = confluence_report(&sys, &[], &[y(), x()], 3).unwrap();
        assert!(rows.iter().all(|r| r.matches && r.oracle_dim == 1 << r.degree));
    }

    #[test]
    fn dropped_rule_is_flagged() {
        let sys = derive_rules(&[plane()]).unwrap();
        let broken = sys.without_rule(&Word::from_gens(&[x(), y()]));
        let rows = confluence_report(&broken, &[plane()], &[y(), x()], 3).unwrap();
        assert!(rows[1].matches);
        assert!(!rows[2].matches);
    }
}
