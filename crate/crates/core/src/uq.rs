//! U_q sl_N as presented data: Chevalley generators and defining relations,
//! the Hopf structure maps, the natural representation, and
//! representation-level checks of the Hopf axioms.
//!
//! Elements of U_q are never brought to a PBW normal form. Everything
//! downstream evaluates words through a representation or through an action.

use crate::freealg::{Gen, NCPoly, Word};
use crate::matrix::SparseMatrix;
use crate::report::Report;
use crate::scalars::{qnum, Field, QRat};
use std::collections::{BTreeMap, HashMap};

/// Cartan matrix of type A_{N-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
}

impl CartanMatrix {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "U_q sl_N needs N >= 2");
        CartanMatrix { n }
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// `a_ij` for `1 <= i, j <= N-1`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        }
    }
}

/// Integer grading of U_q sl_N by a distinguished index: `E_m`, `F_m` carry
/// the configured degrees, everything else has degree 0. The default
/// `(-1, +1)` is the shift the hidden action induces on polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UqGrading {
    pub distinguished: u8,
    pub deg_e: i64,
    pub deg_f: i64,
}

impl UqGrading {
    pub fn new(distinguished: usize) -> Self {
        UqGrading {
            distinguished: distinguished as u8,
            deg_e: -1,
            deg_f: 1,
        }
    }

    pub fn with_e_degree(mut self, deg_e: i64) -> Self {
        self.deg_e = deg_e;
        self
    }

    pub fn with_f_degree(mut self, deg_f: i64) -> Self {
        self.deg_f = deg_f;
        self
    }

    pub fn degree(&self, g: Gen) -> i64 {
        match g {
            Gen::E(i) if i == self.distinguished => self.deg_e,
            Gen::F(i) if i == self.distinguished => self.deg_f,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedRelation<K> {
    pub name: String,
    pub poly: NCPoly<K>,
}

impl<K: Field> NamedRelation<K> {
    pub fn try_map<L: Field, E>(&self, f: impl Fn(&K) -> Result<L, E>) -> Result<NamedRelation<L>, E> {
        Ok(NamedRelation {
            name: self.name.clone(),
            poly: self.poly.try_map_coeffs(f)?,
        })
    }
}

fn w(gs: &[Gen]) -> Word {
    Word::from_gens(gs)
}

fn word_poly(gs: &[Gen]) -> NCPoly<QRat> {
    NCPoly::from_word(w(gs))
}

/// `E_1..E_{N-1}, F_1.., K_1.., Ki_1..`
pub fn generators(n: usize) -> Vec<Gen> {
    let r = (1..n as u8).collect::<Vec<_>>();
    let mut gens: Vec<Gen> = r.iter().map(|&i| Gen::E(i)).collect();
    gens.extend(r.iter().map(|&i| Gen::F(i)));
    gens.extend(r.iter().map(|&i| Gen::K(i)));
    gens.extend(r.iter().map(|&i| Gen::Kinv(i)));
    gens
}

/// The defining relations of U_q sl_N, each written as `lhs - rhs`.
pub fn relations(n: usize) -> Vec<NamedRelation<QRat>> {
    let cartan = CartanMatrix::new(n);
    let r = cartan.rank() as u8;
    let mut out = Vec::new();
    let mut push = |name: String, poly: NCPoly<QRat>| out.push(NamedRelation { name, poly });
    use Gen::{Kinv, E, F, K};
    for i in 1..=r {
        for j in (i + 1)..=r {
            push(
                format!("K{i}K{j}=K{j}K{i}"),
                word_poly(&[K(i), K(j)]).sub(&word_poly(&[K(j), K(i)])),
            );
        }
    }
    for i in 1..=r {
        push(format!("K{i}Ki{i}=1"), word_poly(&[K(i), Kinv(i)]).sub(&NCPoly::one()));
        push(format!("Ki{i}K{i}=1"), word_poly(&[Kinv(i), K(i)]).sub(&NCPoly::one()));
    }
    for i in 1..=r {
        for j in 1..=r {
            let a = cartan.entry(i as usize, j as usize);
            push(
                format!("K{i}E{j}=q^{a}E{j}K{i}"),
                word_poly(&[K(i), E(j)]).sub(&NCPoly::term(QRat::q_pow(a), w(&[E(j), K(i)]))),
            );
            push(
                format!("K{i}F{j}=q^{}F{j}K{i}", -a),
                word_poly(&[K(i), F(j)]).sub(&NCPoly::term(QRat::q_pow(-a), w(&[F(j), K(i)]))),
            );
        }
    }
    let q_minus_qinv = QRat::q().sub(&QRat::q_pow(-1));
    let inv_denom = q_minus_qinv.try_inv().expect("q - 1/q is nonzero");
    for i in 1..=r {
        for j in 1..=r {
            let mut p = word_poly(&[E(i), F(j)]).sub(&word_poly(&[F(j), E(i)]));
            if i == j {
                let cartan_part = NCPoly::gen(K(i)).sub(&NCPoly::gen(Kinv(i)));
                p = p.sub(&cartan_part.scale(&inv_denom));
            }
            push(format!("E{i}F{j}-F{j}E{i}"), p);
        }
    }
    let q2 = qnum(2);
    for i in 1..=r {
        for j in 1..=r {
            if i.abs_diff(j) != 1 {
                continue;
            }
            for (name, x, y) in [("E", E(i), E(j)), ("F", F(i), F(j))] {
                let p = word_poly(&[x, x, y])
                    .sub(&NCPoly::term(q2.clone(), w(&[x, y, x])))
                    .add(&word_poly(&[y, x, x]));
                push(format!("Serre {name}{i}{name}{i}{name}{j}"), p);
            }
        }
    }
    for i in 1..=r {
        for j in (i + 2)..=r {
            push(
                format!("[E{i},E{j}]=0"),
                word_poly(&[E(i), E(j)]).sub(&word_poly(&[E(j), E(i)])),
            );
            push(
                format!("[F{i},F{j}]=0"),
                word_poly(&[F(i), F(j)]).sub(&word_poly(&[F(j), F(i)])),
            );
        }
    }
    out
}

/// Generators, relations, and grading of U_q sl_N.
#[derive(Clone, Debug)]
pub struct UqPresentation {
    pub n: usize,
    pub generators: Vec<Gen>,
    pub relations: Vec<NamedRelation<QRat>>,
    pub grading: UqGrading,
}

impl UqPresentation {
    /// Presentation graded by the distinguished index `m`.
    pub fn new(n: usize, m: usize) -> Self {
        UqPresentation {
            n,
            generators: generators(n),
            relations: relations(n),
            grading: UqGrading::new(m),
        }
    }

    pub fn with_grading(mut self, grading: UqGrading) -> Self {
        self.grading = grading;
        self
    }

    /// Relations that fail to be homogeneous for the configured grading.
    pub fn inhomogeneous_relations(&self) -> Vec<&NamedRelation<QRat>> {
        self.relations
            .iter()
            .filter(|r| {
                let mut degs = r.poly.terms().map(|(w, _)| w.degree(|g| self.grading.degree(g)));
                let first = degs.next();
                !degs.all(|d| Some(d) == first)
            })
            .collect()
    }
}

/// A finite-dimensional representation, one matrix per generator.
#[derive(Clone, Debug)]
pub struct Rep<K> {
    pub dim: usize,
    mats: HashMap<Gen, SparseMatrix<K>>,
}

impl<K: Field> Rep<K> {
    pub fn matrix(&self, g: Gen) -> &SparseMatrix<K> {
        &self.mats[&g]
    }

    pub fn set_matrix(&mut self, g: Gen, m: SparseMatrix<K>) {
        self.mats.insert(g, m);
    }

    pub fn eval_word(&self, w: &Word) -> SparseMatrix<K> {
        w.letters()
            .iter()
            .fold(SparseMatrix::identity(self.dim), |acc, g| acc.mul(self.matrix(*g)))
    }

    pub fn eval(&self, p: &NCPoly<K>) -> SparseMatrix<K> {
        let mut acc = SparseMatrix::zeros(self.dim);
        for (w, c) in p.terms() {
            acc = acc.add(&self.eval_word(w).scale(c));
        }
        acc
    }
}

/// The natural representation on `C^N`: `E_i -> e_{i,i+1}`, `F_i -> e_{i+1,i}`,
/// `K_i -> q e_ii + q^-1 e_{i+1,i+1} + sum of the other e_jj`.
pub fn natural_rep(n: usize) -> Rep<QRat> {
    let mut mats = HashMap::new();
    for i in 1..n {
        let (a, b) = (i - 1, i);
        mats.insert(Gen::E(i as u8), SparseMatrix::unit(n, a, b));
        mats.insert(Gen::F(i as u8), SparseMatrix::unit(n, b, a));
        let diag = |p: i64| {
            let d = (0..n)
                .map(|j| match j {
                    _ if j == a => QRat::q_pow(p),
                    _ if j == b => QRat::q_pow(-p),
                    _ => QRat::one(),
                })
                .collect();
            SparseMatrix::diagonal(d)
        };
        mats.insert(Gen::K(i as u8), diag(1));
        mats.insert(Gen::Kinv(i as u8), diag(-1));
    }
    Rep { dim: n, mats }
}

/// Linear combination of `k`-tuples of words (tensor legs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly<K> {
    legs: usize,
    terms: BTreeMap<Vec<Word>, K>,
}

impl<K: Field> TensorPoly<K> {
    pub fn unit(legs: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![Word::empty(); legs], K::one());
        TensorPoly { legs, terms }
    }

    pub fn zero(legs: usize) -> Self {
        TensorPoly {
            legs,
            terms: BTreeMap::new(),
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: K) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(legs).or_insert_with(K::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Legwise product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs);
        let mut out = Self::zero(self.legs);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let legs = a.iter().zip(b).map(|(u, v)| u.concat(v)).collect();
                out.add_term(legs, x.mul(y));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.legs);
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x.mul(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, x) in &other.terms {
            out.add_term(l.clone(), x.clone());
        }
        out
    }

    /// Evaluates every leg in `rep` and sums the Kronecker products.
    pub fn eval(&self, rep: &Rep<K>) -> SparseMatrix<K> {
        let dim = rep.dim.pow(self.legs as u32);
        let mut acc = SparseMatrix::zeros(dim);
        for (legs, c) in &self.terms {
            let mut m = SparseMatrix::identity(1);
            for l in legs {
                m = m.kron(&rep.eval_word(l));
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

impl<K: Field> std::fmt::Display for TensorPoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (legs, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c}) ")?;
            }
            let ls: Vec<String> = legs.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", ls.join(" ⊗ "))?;
        }
        Ok(())
    }
}

/// `k`-fold coproduct image of a single generator.
fn letter_coproduct<K: Field>(g: Gen, k: usize) -> TensorPoly<K> {
    let mut out = TensorPoly::zero(k);
    match g {
        Gen::K(_) | Gen::Kinv(_) => out.add_term(vec![Word::letter(g); k], K::one()),
        Gen::E(i) => {
            // sum_p K ⊗ .. ⊗ K ⊗ E ⊗ 1 ⊗ .. ⊗ 1
            for p in 0..k {
                let legs = (0..k)
                    .map(|l| match l.cmp(&p) {
                        std::cmp::Ordering::Less => Word::letter(Gen::K(i)),
                        std::cmp::Ordering::Equal => Word::letter(g),
                        std::cmp::Ordering::Greater => Word::empty(),
                    })
                    .collect();
                out.add_term(legs, K::one());
            }
        }
        Gen::F(i) => {
            // sum_p 1 ⊗ .. ⊗ 1 ⊗ F ⊗ Ki ⊗ .. ⊗ Ki
            for p in 0..k {
                let legs = (0..k)
                    .map(|l| match l.cmp(&p) {
                        std::cmp::Ordering::Less => Word::empty(),
                        std::cmp::Ordering::Equal => Word::letter(g),
                        std::cmp::Ordering::Greater => Word::letter(Gen::Kinv(i)),
                    })
                    .collect();
                out.add_term(legs, K::one());
            }
        }
        _ => panic!("coproduct of non-U_q generator {g}"),
    }
    out
}

/// `Delta^(k-1)(w)` with unreduced words in every leg.
pub fn coproduct<K: Field>(w: &Word, k: usize) -> TensorPoly<K> {
    assert!(k >= 1);
    w.letters()
        .iter()
        .fold(TensorPoly::unit(k), |acc, &g| acc.mul(&letter_coproduct(g, k)))
}

pub fn coproduct_poly<K: Field>(p: &NCPoly<K>, k: usize) -> TensorPoly<K> {
    let mut out = TensorPoly::zero(k);
    for (w, c) in p.terms() {
        out = out.add(&coproduct::<K>(w, k).scale(c));
    }
    out
}

/// Removes adjacent `K_i Ki_i` and `Ki_i K_i` pairs, which are relations.
pub fn cancel_k_pairs(w: &Word) -> Word {
    let mut out: Vec<Gen> = Vec::with_capacity(w.len());
    for &g in w.letters() {
        let cancels = matches!(
            (out.last(), g),
            (Some(Gen::K(i)), Gen::Kinv(j)) | (Some(Gen::Kinv(i)), Gen::K(j)) if *i == j
        );
        if cancels {
            out.pop();
        } else {
            out.push(g);
        }
    }
    Word::from_gens(&out)
}

/// Antipode, extended anti-multiplicatively; `K_i Ki_i` pairs are cancelled.
pub fn antipode<K: Field>(w: &Word) -> NCPoly<K> {
    let mut acc = NCPoly::<K>::one();
    for &g in w.letters() {
        let s = match g {
            Gen::E(i) => NCPoly::term(K::one().neg(), Word::from_gens(&[Gen::Kinv(i), g])),
            Gen::F(i) => NCPoly::term(K::one().neg(), Word::from_gens(&[g, Gen::K(i)])),
            Gen::K(i) => NCPoly::gen(Gen::Kinv(i)),
            Gen::Kinv(i) => NCPoly::gen(Gen::K(i)),
            _ => panic!("antipode of non-U_q generator {g}"),
        };
        acc = s.mul(&acc);
    }
    NCPoly::from_terms(acc.into_terms().map(|(w, c)| (cancel_k_pairs(&w), c)))
}

/// Counit: multiplicative, zero on `E_i`, `F_i`, one on `K_i^{±1}`.
pub fn counit<K: Field>(w: &Word) -> K {
    if w.letters().iter().any(|g| matches!(g, Gen::E(_) | Gen::F(_))) {
        K::zero()
    } else {
        K::one()
    }
}

pub fn counit_poly<K: Field>(p: &NCPoly<K>) -> K {
    p.terms()
        .fold(K::zero(), |acc, (w, c)| acc.add(&c.mul(&counit::<K>(w))))
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn words_up_to(alphabet: &[Gen], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &g in alphabet {
                let mut nw = w.clone();
                nw.push(g);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn matrix_witness(m: &SparseMatrix<QRat>) -> String {
    match m.first_nonzero() {
        Some((i, j, x)) => format!("entry ({},{}) = {x}", i + 1, j + 1),
        None => "zero".into(),
    }
}

/// Checks, in the natural representation `pi`:
/// every defining relation vanishes under `pi^{⊗k} ∘ Delta^(k-1)` for
/// `k <= k_max`; both antipode axioms hold on every word of length `<= 3`;
/// the two bracketings of the double coproduct agree; and
/// `pi(K_i) pi(E_j) pi(K_i)^-1 = q^{a_ij} pi(E_j)`.
pub fn verify_hopf_in_rep(n: usize, k_max: usize) -> Report {
    let mut report = Report::new("hopf").param("N", n).param("k_max", k_max);
    let pi = natural_rep(n);
    for rel in relations(n) {
        for k in 1..=k_max {
            let m = coproduct_poly(&rel.poly, k).eval(&pi);
            report.push(
                format!("relation {} under pi^{k}", rel.name),
                m.is_zero(),
                Some(format!("{}: {}", rel.poly, matrix_witness(&m))),
            );
        }
    }
    let alphabet = generators(n);
    let words = words_up_to(&alphabet, 3);
    let mut left_bad = None;
    let mut right_bad = None;
    let mut coassoc_bad = None;
    for w in &words {
        let delta: TensorPoly<QRat> = coproduct(w, 2);
        let eps = SparseMatrix::identity(n).scale(&counit::<QRat>(w));
        let mut left = SparseMatrix::zeros(n);
        let mut right = SparseMatrix::zeros(n);
        for (legs, c) in delta.terms() {
            let s0 = pi.eval(&antipode(&legs[0]));
            let s1 = pi.eval(&antipode(&legs[1]));
            left = left.add(&s0.mul(&pi.eval_word(&legs[1])).scale(c));
            right = right.add(&pi.eval_word(&legs[0]).mul(&s1).scale(c));
        }
        if left_bad.is_none() && left != eps {
            left_bad = Some(w.to_string());
        }
        if right_bad.is_none() && right != eps {
            right_bad = Some(w.to_string());
        }
        if coassoc_bad.is_none() {
            // (Delta ⊗ id) Delta  versus  (id ⊗ Delta) Delta
            let mut lhs = TensorPoly::<QRat>::zero(3);
            let mut rhs = TensorPoly::<QRat>::zero(3);
            for (legs, c) in delta.terms() {
                for (l2, c2) in coproduct::<QRat>(&legs[0], 2).terms() {
                    lhs.add_term(vec![l2[0].clone(), l2[1].clone(), legs[1].clone()], c.mul(c2));
                }
                for (r2, c2) in coproduct::<QRat>(&legs[1], 2).terms() {
                    rhs.add_term(vec![legs[0].clone(), r2[0].clone(), r2[1].clone()], c.mul(c2));
                }
            }
            if lhs.eval(&pi) != rhs.eval(&pi) {
                coassoc_bad = Some(w.to_string());
            }
        }
    }
    report.push("antipode axiom S(w1) w2 = eps(w) on words of length <= 3", left_bad.is_none(), left_bad);
    report.push("antipode axiom w1 S(w2) = eps(w) on words of length <= 3", right_bad.is_none(), right_bad);
    report.push("coassociativity on words of length <= 3", coassoc_bad.is_none(), coassoc_bad);
    let cartan = CartanMatrix::new(n);
    let mut conj_bad = None;
    for i in 1..n {
        for j in 1..n {
            let (gi, gj) = (i as u8, j as u8);
            let lhs = pi
                .matrix(Gen::K(gi))
                .mul(pi.matrix(Gen::E(gj)))
                .mul(pi.matrix(Gen::Kinv(gi)));
            let rhs = pi.matrix(Gen::E(gj)).scale(&QRat::q_pow(cartan.entry(i, j)));
            if lhs != rhs && conj_bad.is_none() {
                conj_bad = Some(format!("K{i} E{j} K{i}^-1"));
            }
        }
    }
    report.push("K-conjugation of E", conj_bad.is_none(), conj_bad);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{Kinv, E, F, K};

    #[test]
    fn cartan_entries() {
        let c = CartanMatrix::new(4);
        assert_eq!(c.entry(2, 2), 2);
        assert_eq!(c.entry(2, 3), -1);
        assert_eq!(c.entry(1, 3), 0);
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(c.entry(i, j), c.entry(j, i));
            }
        }
    }

    #[test]
    fn relation_examples() {
        let rels = relations(2);
        let ef = rels.iter().find(|r| r.name == "E1F1-F1E1").unwrap();
        let expected = word_poly(&[E(1), F(1)])
            .sub(&word_poly(&[F(1), E(1)]))
            .sub(
                &NCPoly::gen(K(1))
                    .sub(&NCPoly::gen(Kinv(1)))
                    .scale(&QRat::q().sub(&QRat::q_pow(-1)).try_inv().unwrap()),
            );
        assert_eq!(ef.poly, expected);

        let rels = relations(3);
        let serre = rels.iter().find(|r| r.name == "Serre E1E1E2").unwrap();
        let expected = word_poly(&[E(1), E(1), E(2)])
            .sub(&NCPoly::term(QRat::q().add(&QRat::q_pow(-1)), w(&[E(1), E(2), E(1)])))
            .add(&word_poly(&[E(2), E(1), E(1)]));
        assert_eq!(serre.poly, expected);

        let rels = relations(4);
        let comm = rels.iter().find(|r| r.name == "[E1,E3]=0").unwrap();
        assert_eq!(comm.poly, word_poly(&[E(1), E(3)]).sub(&word_poly(&[E(3), E(1)])));
        assert!(!rels.iter().any(|r| r.name == "[E1,E2]=0"));
    }

    #[test]
    fn natural_representation() {
        let pi = natural_rep(2);
        assert_eq!(
            pi.matrix(K(1)),
            &SparseMatrix::diagonal(vec![QRat::q(), QRat::q_pow(-1)])
        );
        assert_eq!(pi.matrix(E(1)), &SparseMatrix::unit(2, 0, 1));
        let pi3 = natural_rep(3);
        assert_eq!(
            pi3.matrix(K(2)),
            &SparseMatrix::diagonal(vec![QRat::one(), QRat::q(), QRat::q_pow(-1)])
        );
        assert_eq!(pi3.matrix(K(2)).mul(pi3.matrix(Kinv(2))), SparseMatrix::identity(3));
    }

    #[test]
    fn coproduct_examples() {
        let dk: TensorPoly<QRat> = coproduct(&w(&[K(1)]), 2);
        assert_eq!(dk.to_string(), "K_1 ⊗ K_1");
        let de: TensorPoly<QRat> = coproduct(&w(&[E(1)]), 2);
        let mut expected = TensorPoly::zero(2);
        expected.add_term(vec![w(&[E(1)]), Word::empty()], QRat::one());
        expected.add_term(vec![w(&[K(1)]), w(&[E(1)])], QRat::one());
        assert_eq!(de, expected);

        let def: TensorPoly<QRat> = coproduct(&w(&[E(1), F(1)]), 2);
        let mut expected = TensorPoly::zero(2);
        expected.add_term(vec![w(&[E(1), F(1)]), w(&[Kinv(1)])], QRat::one());
        expected.add_term(vec![w(&[E(1)]), w(&[F(1)])], QRat::one());
        expected.add_term(vec![w(&[K(1), F(1)]), w(&[E(1), Kinv(1)])], QRat::one());
        expected.add_term(vec![w(&[K(1)]), w(&[E(1), F(1)])], QRat::one());
        assert_eq!(def, expected);
    }

    #[test]
    fn antipode_and_counit_examples() {
        assert_eq!(counit::<QRat>(&w(&[K(1), E(1)])), QRat::zero());
        assert_eq!(counit::<QRat>(&w(&[K(1), Kinv(2)])), QRat::one());
        assert_eq!(
            antipode::<QRat>(&w(&[E(1)])),
            NCPoly::term(QRat::from_int(-1), w(&[Kinv(1), E(1)]))
        );
        assert_eq!(antipode::<QRat>(&w(&[E(1), F(1)])), word_poly(&[F(1), E(1)]));
    }

    #[test]
    fn grading_homogeneity() {
        let p = UqPresentation::new(3, 1);
        assert!(p.inhomogeneous_relations().is_empty());
        let p0 = p.clone().with_grading(UqGrading::new(1).with_e_degree(1).with_f_degree(0));
        let bad: Vec<&str> = p0.inhomogeneous_relations().iter().map(|r| r.name.as_str()).collect();
        assert_eq!(bad, vec!["E1F1-F1E1"]);
    }

    #[test]
    fn hopf_axioms_small() {
        let r = verify_hopf_in_rep(2, 2);
        assert!(r.passed(), "{r}");
        let r = verify_hopf_in_rep(3, 2);
        assert!(r.passed(), "{r}");
    }
}
