//! Matrix coefficients of the natural representation as functionals on
//! U_q sl_N, quantum minors, division in the convolution algebra, and the
//! embedding of the coordinate algebra into the dual.
//!
//! Functionals are stored as dense tables over every word of length `<= L`
//! in the alphabet `E_i, F_i, K_i, Ki_i`. All coproduct coefficients of a
//! word are 1, so convolution is a plain sum over leg splittings.

use crate::freealg::linalg::Echelon;
use crate::freealg::{Gen, NCPoly, Word};
use crate::qmatcalc::{build_calculus, QmatError};
use crate::report::Report;
use crate::scalars::{Field, QRat};
use crate::uq::{self, coproduct};
use itertools::Itertools;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("not invertible at identity: pairing with the empty word is 0")]
    NotInvertible,
    #[error("pivot pairing vanishes at word {0}")]
    PivotVanishes(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("word {0} is longer than the table cutoff {1}")]
    TooLong(String, usize),
    #[error(transparent)]
    Calculus(#[from] QmatError),
}

#[derive(Clone, Copy, Debug)]
enum Letter {
    E { k: usize },
    F { kinv: usize },
    Grouplike,
}

/// Weight of a word in root coordinates: entry `i - 1` is the number of
/// `E_i` minus the number of `F_i`.
pub type Weight = Vec<i32>;

/// Dense numbering of all words of length `<= max_len` over the U_q
/// alphabet: words of length `l` occupy `offsets[l]..offsets[l+1]`, and
/// inside a length the code is the base-`A` number of the letters. Words are
/// also bucketed by weight, since every functional used here is supported on
/// a single weight.
#[derive(Debug)]
pub struct WordIndex {
    n: usize,
    alphabet: Vec<Gen>,
    pos: HashMap<Gen, usize>,
    kinds: Vec<Letter>,
    max_len: usize,
    offsets: Vec<usize>,
    weight_of: Vec<u32>,
    weights: Vec<Weight>,
    weight_ids: HashMap<Weight, u32>,
    buckets: Vec<Vec<usize>>,
}

impl WordIndex {
    /// Index for U_q sl_N, `N >= 2`.
    pub fn new(n: usize, max_len: usize) -> Self {
        assert!(n >= 2, "U_q sl_N needs N >= 2");
        let alphabet = uq::generators(n);
        let pos: HashMap<Gen, usize> = alphabet.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let kinds = alphabet
            .iter()
            .map(|g| match *g {
                Gen::E(i) => Letter::E { k: pos[&Gen::K(i)] },
                Gen::F(i) => Letter::F {
                    kinv: pos[&Gen::Kinv(i)],
                },
                _ => Letter::Grouplike,
            })
            .collect();
        let a = alphabet.len();
        let mut offsets = vec![0];
        let mut width = 1;
        for _ in 0..=max_len {
            offsets.push(offsets.last().unwrap() + width);
            width *= a;
        }
        let mut ix = WordIndex {
            n,
            alphabet,
            pos,
            kinds,
            max_len,
            offsets,
            weight_of: Vec::new(),
            weights: Vec::new(),
            weight_ids: HashMap::new(),
            buckets: Vec::new(),
        };
        let total = ix.size();
        let mut weight_of = Vec::with_capacity(total);
        weight_of.push(ix.weight_id(vec![0; n - 1]));
        for idx in 1..total {
            let len = ix.len_of(idx);
            let code = idx - ix.offsets[len];
            let prefix = ix.offsets[len - 1] + code / a;
            let mut w = ix.weights[weight_of[prefix] as usize].clone();
            match ix.alphabet[code % a] {
                Gen::E(i) => w[i as usize - 1] += 1,
                Gen::F(i) => w[i as usize - 1] -= 1,
                _ => {}
            }
            weight_of.push(ix.weight_id(w));
        }
        let mut buckets = vec![Vec::new(); ix.weights.len()];
        for (idx, &w) in weight_of.iter().enumerate() {
            buckets[w as usize].push(idx);
        }
        ix.weight_of = weight_of;
        ix.buckets = buckets;
        ix
    }

    fn weight_id(&mut self, w: Weight) -> u32 {
        if let Some(&id) = self.weight_ids.get(&w) {
            return id;
        }
        let id = self.weights.len() as u32;
        self.weights.push(w.clone());
        self.weight_ids.insert(w, id);
        id
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[Gen] {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of words of length `<= len`.
    pub fn count_up_to(&self, len: usize) -> usize {
        self.offsets[len.min(self.max_len) + 1]
    }

    pub fn size(&self) -> usize {
        self.count_up_to(self.max_len)
    }

    pub fn len_of(&self, idx: usize) -> usize {
        self.offsets.partition_point(|&o| o <= idx) - 1
    }

    pub fn letters(&self, idx: usize) -> Vec<usize> {
        let len = self.len_of(idx);
        let a = self.alphabet.len();
        let mut code = idx - self.offsets[len];
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = code % a;
            code /= a;
        }
        out
    }

    pub fn word(&self, idx: usize) -> Word {
        let gens: Vec<Gen> = self.letters(idx).into_iter().map(|l| self.alphabet[l]).collect();
        Word::from_gens(&gens)
    }

    pub fn index(&self, w: &Word) -> Option<usize> {
        if w.len() > self.max_len {
            return None;
        }
        let a = self.alphabet.len();
        let mut code = 0;
        for g in w.letters() {
            code = code * a + self.pos.get(g)?;
        }
        Some(self.offsets[w.len()] + code)
    }

    /// Index of `w * g` for the word with index `idx`, if within range.
    pub fn extend(&self, idx: usize, g: Gen) -> Option<usize> {
        let len = self.len_of(idx);
        if len >= self.max_len {
            return None;
        }
        let a = self.alphabet.len();
        Some(self.offsets[len + 1] + (idx - self.offsets[len]) * a + self.pos.get(&g)?)
    }

    pub fn weight(&self, idx: usize) -> &Weight {
        &self.weights[self.weight_of[idx] as usize]
    }

    /// Weight of a single U_q generator.
    pub fn generator_weight(&self, g: Gen) -> Weight {
        let mut w = vec![0; self.n - 1];
        match g {
            Gen::E(i) => w[i as usize - 1] = 1,
            Gen::F(i) => w[i as usize - 1] = -1,
            _ => {}
        }
        w
    }

    /// All words of the given weight, in index order.
    pub fn bucket(&self, w: &Weight) -> &[usize] {
        self.weight_ids
            .get(w)
            .map(|&id| self.buckets[id as usize].as_slice())
            .unwrap_or(&[])
    }

    /// Number of `E`/`F` letters.
    pub fn ef_count(&self, idx: usize) -> usize {
        self.letters(idx)
            .iter()
            .filter(|&&l| !matches!(self.kinds[l], Letter::Grouplike))
            .count()
    }

    /// Calls `f(left, right)` for every term of the coproduct of the word
    /// with the given letters.
    pub fn coproduct(&self, letters: &[usize], f: &mut impl FnMut(usize, usize)) {
        self.coproduct_rec(letters, (0, 0), (0, 0), f);
    }

    fn coproduct_rec(
        &self,
        letters: &[usize],
        l: (usize, usize),
        r: (usize, usize),
        f: &mut impl FnMut(usize, usize),
    ) {
        let a = self.alphabet.len();
        let push = |(len, code): (usize, usize), x: usize| (len + 1, code * a + x);
        let Some((&x, rest)) = letters.split_first() else {
            f(self.offsets[l.0] + l.1, self.offsets[r.0] + r.1);
            return;
        };
        match self.kinds[x] {
            Letter::Grouplike => self.coproduct_rec(rest, push(l, x), push(r, x), f),
            Letter::E { k } => {
                self.coproduct_rec(rest, push(l, x), r, f);
                self.coproduct_rec(rest, push(l, k), push(r, x), f);
            }
            Letter::F { kinv } => {
                self.coproduct_rec(rest, push(l, x), push(r, kinv), f);
                self.coproduct_rec(rest, l, push(r, x), f);
            }
        }
    }
}

fn add_weights(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_weights(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A linear functional on U_q sl_N truncated to words of length `<= L`,
/// stored sparsely.
#[derive(Clone, Debug)]
pub struct FunctionalTable {
    index: Arc<WordIndex>,
    values: HashMap<usize, QRat>,
}

impl PartialEq for FunctionalTable {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl FunctionalTable {
    pub fn zero(index: Arc<WordIndex>) -> Self {
        FunctionalTable {
            index,
            values: HashMap::new(),
        }
    }

    fn from_entries(index: Arc<WordIndex>, entries: impl IntoIterator<Item = (usize, QRat)>) -> Self {
        let values = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        FunctionalTable { index, values }
    }

    /// The counit: 1 on words without `E`/`F` letters, 0 elsewhere.
    pub fn counit(index: Arc<WordIndex>) -> Self {
        let zero = vec![0; index.rank_n() - 1];
        let entries: Vec<(usize, QRat)> = index
            .bucket(&zero)
            .iter()
            .filter(|&&i| index.ef_count(i) == 0)
            .map(|&i| (i, QRat::one()))
            .collect();
        Self::from_entries(index, entries)
    }

    pub fn index(&self) -> &Arc<WordIndex> {
        &self.index
    }

    pub fn value(&self, idx: usize) -> QRat {
        self.values.get(&idx).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn get(&self, w: &Word) -> Option<QRat> {
        self.index.index(w).map(|i| self.value(i))
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> Vec<(usize, &QRat)> {
        let mut e: Vec<(usize, &QRat)> = self.values.iter().map(|(i, v)| (*i, v)).collect();
        e.sort_unstable_by_key(|(i, _)| *i);
        e
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// First word (in index order) with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(Word, QRat)> {
        let i = *self.values.keys().min()?;
        Some((self.index.word(i), self.values[&i].clone()))
    }

    /// Weights carrying nonzero values, sorted.
    pub fn weights(&self) -> Vec<Weight> {
        let mut w: Vec<Weight> = self.values.keys().map(|&i| self.index.weight(i).clone()).collect();
        w.sort();
        w.dedup();
        w
    }

    pub fn add_scaled(&mut self, c: &QRat, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (i, o) in &other.values {
            let v = self.value(*i).add(&c.mul(o));
            if v.is_zero() {
                self.values.remove(i);
            } else {
                self.values.insert(*i, v);
            }
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        Self::from_entries(
            self.index.clone(),
            self.values.iter().map(|(i, v)| (*i, v.mul(c))),
        )
    }

    /// `(f * g)(eta) = sum f(eta_(1)) g(eta_(2))`, evaluated only on the
    /// weights where it can be nonzero.
    pub fn convolve(&self, other: &Self) -> Self {
        let ix = &self.index;
        let mut targets: Vec<Weight> = self
            .weights()
            .iter()
            .flat_map(|a| other.weights().into_iter().map(move |b| add_weights(a, &b)))
            .collect();
        targets.sort();
        targets.dedup();
        let mut values = HashMap::new();
        for w in &targets {
            for &eta in ix.bucket(w) {
                let mut acc = QRat::zero();
                ix.coproduct(&ix.letters(eta), &mut |l, r| {
                    if let (Some(a), Some(b)) = (self.values.get(&l), other.values.get(&r)) {
                        acc = acc.add(&a.mul(b));
                    }
                });
                if !acc.is_zero() {
                    values.insert(eta, acc);
                }
            }
        }
        FunctionalTable {
            index: ix.clone(),
            values,
        }
    }

    /// Nonzero values of `eta -> f(eta g)` over words `eta` of length
    /// `<= L - 1`, in index order: the functional `g . f` for the action by
    /// right multiplication.
    pub fn shifted(&self, g: Gen) -> Vec<(usize, QRat)> {
        let ix = &self.index;
        let gw = ix.generator_weight(g);
        let probes = ix.count_up_to(ix.max_len().saturating_sub(1));
        let mut out = Vec::new();
        for w in self.weights() {
            for &eta in ix.bucket(&sub_weights(&w, &gw)) {
                if eta >= probes {
                    break;
                }
                let v = self.value(ix.extend(eta, g).expect("generator in alphabet"));
                if !v.is_zero() {
                    out.push((eta, v));
                }
            }
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }

    /// `{word: value}` over the nonzero entries, in index order.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries()
            .into_iter()
            .map(|(i, v)| (self.index.word(i).to_string(), v.to_string().into()))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Solves `x * f = y` for `f`, word by word in order of increasing `E`/`F`
/// count. In the coproduct of `eta` the only term whose right leg is `eta`
/// has a pure `K` word on the left; every other right leg has fewer `E`/`F`
/// letters.
pub fn dual_divide(x: &FunctionalTable, y: &FunctionalTable) -> Result<FunctionalTable, PairingError> {
    let ix = x.index.clone();
    if x.value(0).is_zero() {
        return Err(PairingError::NotInvertible);
    }
    // A weight-zero x leaves the weights of y unchanged, so only those
    // buckets can carry values; otherwise every word is solved for.
    let zero = vec![0; ix.rank_n() - 1];
    let mut order: Vec<(usize, usize)> = if x.weights() == vec![zero] {
        y.weights()
            .iter()
            .flat_map(|w| ix.bucket(w).iter().map(|&i| (ix.ef_count(i), i)))
            .collect()
    } else {
        (0..ix.size()).map(|i| (ix.ef_count(i), i)).collect()
    };
    order.sort_unstable();
    let mut f: HashMap<usize, QRat> = HashMap::new();
    for (_, eta) in order {
        let mut acc = y.value(eta);
        let mut pivot = QRat::zero();
        ix.coproduct(&ix.letters(eta), &mut |l, r| {
            if r == eta {
                pivot = x.value(l);
            } else if let (Some(a), Some(b)) = (x.values.get(&l), f.get(&r)) {
                acc = acc.sub(&a.mul(b));
            }
        });
        let v = acc
            .try_div(&pivot)
            .map_err(|_| PairingError::PivotVanishes(ix.word(eta).to_string()))?;
        if !v.is_zero() {
            f.insert(eta, v);
        }
    }
    Ok(FunctionalTable { index: ix, values: f })
}

/// Number of inversions of a permutation given as a list of images.
pub fn perm_length(w: &[usize]) -> usize {
    w.iter()
        .tuple_combinations()
        .filter(|(a, b)| a > b)
        .count()
}

/// A quantum minor `x(j_1, ..., j_m)` of the first `m` rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Minor {
    cols: Vec<usize>,
}

impl Minor {
    pub fn new(cols: Vec<usize>, big_n: usize) -> Result<Self, PairingError> {
        if cols.is_empty() || cols.windows(2).any(|p| p[0] >= p[1]) {
            return Err(PairingError::Index(format!("columns {cols:?} not strictly increasing")));
        }
        if cols[0] == 0 || *cols.last().unwrap() > big_n {
            return Err(PairingError::Index(format!("columns {cols:?} outside 1..={big_n}")));
        }
        Ok(Minor { cols })
    }

    pub fn m(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// `sum_w (-q)^{l(w)} u_{1,j_w(1)} ... u_{m,j_w(m)}`.
    pub fn expand(&self) -> NCPoly<QRat> {
        let m = self.m();
        let mut p = NCPoly::zero();
        for w in (0..m).permutations(m) {
            let gens: Vec<Gen> = w
                .iter()
                .enumerate()
                .map(|(row, &k)| Gen::U {
                    i: row as u8 + 1,
                    j: self.cols[k] as u8,
                })
                .collect();
            let l = perm_length(&w);
            let sign = if l % 2 == 0 { 1 } else { -1 };
            p.add_term(Word::from_gens(&gens), QRat::from_int(sign).mul(&QRat::q_pow(l as i64)));
        }
        p
    }
}

impl std::fmt::Display for Minor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x({})", self.cols.iter().join(","))
    }
}

pub fn minor_expand(mn: &Minor) -> NCPoly<QRat> {
    mn.expand()
}

/// Denominator and numerator minors of the image of `t_a^alpha`.
pub fn embed(m: usize, n: usize, a: usize, alpha: usize) -> Result<(Minor, Minor), PairingError> {
    if a == 0 || a > n || alpha == 0 || alpha > m {
        return Err(PairingError::Index(format!("t[{a},{alpha}] with (m,n)=({m},{n})")));
    }
    let den = Minor::new((1..=m).collect(), m + n)?;
    let mut cols: Vec<usize> = (1..=m).filter(|&c| c != m + 1 - alpha).collect();
    cols.push(m + a);
    cols.sort_unstable();
    Ok((den, Minor::new(cols, m + n)?))
}

/// Weight of the functional `i(t_a^alpha)`: `e_{m+1-alpha} - e_{m+a}` in
/// root coordinates, of height `a + alpha - 1`.
pub fn coordinate_weight(m: usize, n: usize, a: usize, alpha: usize) -> Weight {
    let mut w = vec![0; m + n - 1];
    for slot in &mut w[m - alpha..m + a - 1] {
        *slot = 1;
    }
    w
}

/// Weight of a monomial in `t` and `dt` (a `dt` weighs as its `t`).
pub fn monomial_weight(m: usize, n: usize, w: &Word) -> Weight {
    let mut out = vec![0; m + n - 1];
    for g in w.letters() {
        if let Gen::T { a, alpha } | Gen::Dt { a, alpha } = *g {
            out = add_weights(&out, &coordinate_weight(m, n, a as usize, alpha as usize));
        }
    }
    out
}

/// Sum of the root coordinates; a functional of weight `w` vanishes on every
/// word shorter than this.
pub fn height(w: &Weight) -> usize {
    w.iter().map(|c| c.unsigned_abs() as usize).sum()
}

/// Pairing of a polynomial in the `u_ij` with a word, evaluated directly as
/// an entry of `pi^{⊗k}(Delta^{(k-1)} w)`.
pub fn pair(p: &NCPoly<QRat>, w: &Word) -> QRat {
    let big_n = p
        .terms()
        .flat_map(|(u, _)| u.letters().to_vec())
        .chain(w.letters().iter().copied())
        .map(|g| match g {
            Gen::U { i, j } => i.max(j) as usize,
            Gen::E(i) | Gen::F(i) | Gen::K(i) | Gen::Kinv(i) => i as usize + 1,
            _ => panic!("{g} is neither a matrix coefficient nor a U_q generator"),
        })
        .max()
        .unwrap_or(2)
        .max(2);
    let rep = uq::natural_rep(big_n);
    let mut total = QRat::zero();
    for (mono, c) in p.terms() {
        let k = mono.len();
        let v = if k == 0 {
            uq::counit(w)
        } else {
            let (mut row, mut col) = (0, 0);
            for g in mono.letters() {
                let Gen::U { i, j } = *g else { panic!("{g} is not a matrix coefficient") };
                row = row * big_n + i as usize - 1;
                col = col * big_n + j as usize - 1;
            }
            coproduct::<QRat>(w, k).eval(&rep).get(row, col)
        };
        total = total.add(&c.mul(&v));
    }
    total
}

/// Tables of matrix coefficients and of embedded coordinate monomials for a
/// fixed `(m, n, L)`. Monomial tables are memoized.
pub struct Pairing {
    m: usize,
    n: usize,
    index: Arc<WordIndex>,
    coefficients: Vec<Arc<FunctionalTable>>,
    cache: Mutex<HashMap<Word, Arc<FunctionalTable>>>,
}

impl Pairing {
    pub fn new(m: usize, n: usize, max_len: usize) -> Self {
        let big_n = m + n;
        let index = Arc::new(WordIndex::new(big_n, max_len));
        let rep = uq::natural_rep(big_n);
        let coefficients = (0..big_n * big_n)
            .map(|ij| {
                let (i, j) = (ij / big_n, ij % big_n);
                // pi(eta) e_j, letter by letter from the right; every letter
                // maps a basis vector to a multiple of a basis vector.
                let mut weight = vec![0; big_n - 1];
                for k in i.min(j)..i.max(j) {
                    weight[k] = if i < j { 1 } else { -1 };
                }
                let entries: Vec<(usize, QRat)> = index
                    .bucket(&weight)
                    .iter()
                    .filter_map(|&eta| {
                        let mut row = j;
                        let mut c = QRat::one();
                        for &l in index.letters(eta).iter().rev() {
                            let mat = rep.matrix(index.alphabet()[l]);
                            let (r, v) = (0..big_n)
                                .map(|r| (r, mat.get(r, row)))
                                .find(|(_, v)| !v.is_zero())?;
                            row = r;
                            c = c.mul(&v);
                        }
                        (row == i).then_some((eta, c))
                    })
                    .collect();
                Arc::new(FunctionalTable::from_entries(index.clone(), entries))
            })
            .collect();
        Pairing {
            m,
            n,
            index,
            coefficients,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> &Arc<WordIndex> {
        &self.index
    }

    pub fn max_len(&self) -> usize {
        self.index.max_len()
    }

    /// The table of `u_ij` (one-based).
    pub fn coefficient(&self, i: usize, j: usize) -> Arc<FunctionalTable> {
        let big_n = self.m + self.n;
        self.coefficients[(i - 1) * big_n + j - 1].clone()
    }

    /// The table of a polynomial in the `u_ij`.
    pub fn u_table(&self, p: &NCPoly<QRat>) -> FunctionalTable {
        let mut out = FunctionalTable::zero(self.index.clone());
        for (mono, c) in p.terms() {
            let t = mono
                .letters()
                .iter()
                .fold(FunctionalTable::counit(self.index.clone()), |acc, g| {
                    let Gen::U { i, j } = *g else { panic!("{g} is not a matrix coefficient") };
                    acc.convolve(&self.coefficient(i as usize, j as usize))
                });
            out.add_scaled(c, &t);
        }
        out
    }

    /// `x(1..m)^{-1} * y` for a polynomial `y` in the `u_ij`.
    pub fn divide_by_leading_minor(&self, y: &NCPoly<QRat>) -> Result<FunctionalTable, PairingError> {
        let den = Minor::new((1..=self.m).collect(), self.m + self.n)?;
        dual_divide(&self.u_table(&den.expand()), &self.u_table(y))
    }

    /// The functional `i(w)` for a monomial `w` in the coordinates.
    pub fn monomial(&self, w: &Word) -> Result<Arc<FunctionalTable>, PairingError> {
        if let Some(t) = self.cache.lock().unwrap().get(w) {
            return Ok(t.clone());
        }
        let table = match w.len() {
            0 => FunctionalTable::counit(self.index.clone()),
            1 => {
                let Gen::T { a, alpha } = w.letters()[0] else {
                    return Err(PairingError::Index(format!("{w} is not a coordinate")));
                };
                let (_, num) = embed(self.m, self.n, a as usize, alpha as usize)?;
                self.divide_by_leading_minor(&num.expand())?
            }
            len => {
                let head = self.monomial(&Word::from_gens(&w.letters()[..len - 1]))?;
                let last = self.monomial(&Word::letter(w.letters()[len - 1]))?;
                head.convolve(&last)
            }
        };
        let table = Arc::new(table);
        self.cache.lock().unwrap().insert(w.clone(), table.clone());
        Ok(table)
    }

    /// The functional `i(p)` for a polynomial in the coordinates.
    pub fn table(&self, p: &NCPoly<QRat>) -> Result<FunctionalTable, PairingError> {
        let mut out = FunctionalTable::zero(self.index.clone());
        for (w, c) in p.terms() {
            out.add_scaled(c, &*self.monomial(w)?);
        }
        Ok(out)
    }
}

/// Rank of the tables of the given coordinate monomials.
pub fn table_rank(pairing: &Pairing, monomials: &[Word]) -> Result<usize, PairingError> {
    let mut ech = Echelon::new();
    for w in monomials {
        let row = pairing
            .monomial(w)?
            .entries()
            .into_iter()
            .map(|(i, v)| (i, v.clone()))
            .collect();
        ech.insert(row);
    }
    Ok(ech.rank())
}

/// Relation compatibility and injectivity evidence for the embedding.
pub fn embed_check(m: usize, n: usize, max_len: usize, maxdeg: usize) -> Result<Report, PairingError> {
    let om = build_calculus(m, n, maxdeg.max(2))?;
    let pairing = Pairing::new(m, n, max_len);
    let mut r = Report::new("embed")
        .param("m", m)
        .param("n", n)
        .param("L", max_len)
        .param("D", maxdeg);
    for rel in &om.relations.tt {
        let t = pairing.table(rel)?;
        r.push(
            format!("relation {rel} pairs to 0"),
            t.is_zero(),
            t.first_nonzero().map(|(w, v)| format!("value {v} at {w}")),
        );
    }
    if om.relations.tt.is_empty() {
        r.note("relation compatibility", "no degree-zero relations");
    }
    let basis: Vec<Word> = (0..=maxdeg).flat_map(|d| om.calculus.basis(d, 0)).collect();
    let rank = table_rank(&pairing, &basis)?;
    let (visible, hidden): (Vec<Word>, Vec<Word>) = basis
        .iter()
        .cloned()
        .partition(|w| height(&monomial_weight(m, n, w)) <= max_len);
    r.push(
        format!("tables of the {} normal monomials of degree <= {maxdeg} are independent", basis.len()),
        rank == basis.len(),
        Some(if hidden.is_empty() {
            format!("rank {rank}")
        } else {
            format!(
                "rank {rank}; {} monomials have weight height > L and pair to 0 on every probe, e.g. {}",
                hidden.len(),
                hidden[0]
            )
        }),
    );
    let visible_rank = table_rank(&pairing, &visible)?;
    r.push(
        format!("tables of the {} normal monomials of weight height <= L are independent", visible.len()),
        visible_rank == visible.len(),
        Some(format!("rank {visible_rank}")),
    );
    Ok(r)
}
