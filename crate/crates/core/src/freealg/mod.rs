//! Noncommutative polynomials over an exact field, rewriting to normal form,
//! and a linear-algebra oracle for graded quotient dimensions.

pub mod linalg;
pub mod oracle;
pub mod rewrite;

use crate::scalars::{Field, QRat, ScalarError};
use num_rational::BigRational;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use oracle::{confluence_report, linearize_degree, ConfluenceRow, GradedQuotient};
pub use rewrite::{derive_rules, RewriteError, RewriteSystem, Rule};

/// A generator of one of the ambient algebras.
///
/// `T`/`Dt` are the coordinates `t_a^alpha` and their differentials, `E..Kinv`
/// the Chevalley generators of U_q sl_N, `U` the matrix coefficients `u_ij`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    T { a: u8, alpha: u8 },
    Dt { a: u8, alpha: u8 },
    E(u8),
    F(u8),
    K(u8),
    Kinv(u8),
    U { i: u8, j: u8 },
}

impl Gen {
    fn kind_rank(self) -> u8 {
        match self {
            Gen::T { .. } => 0,
            Gen::Dt { .. } => 1,
            Gen::E(_) => 2,
            Gen::F(_) => 3,
            Gen::K(_) => 4,
            Gen::Kinv(_) => 5,
            Gen::U { .. } => 6,
        }
    }

    fn index_key(self) -> (u8, u8) {
        match self {
            Gen::T { a, alpha } | Gen::Dt { a, alpha } => (alpha, a),
            Gen::E(i) | Gen::F(i) | Gen::K(i) | Gen::Kinv(i) => (i, 0),
            Gen::U { i, j } => (i, j),
        }
    }

    pub fn is_uq(self) -> bool {
        matches!(self, Gen::E(_) | Gen::F(_) | Gen::K(_) | Gen::Kinv(_))
    }

    /// Form degree: 1 for differentials, 0 otherwise.
    pub fn form_degree(self) -> usize {
        usize::from(matches!(self, Gen::Dt { .. }))
    }

    /// The differential of a coordinate, if this is one.
    pub fn differential(self) -> Option<Gen> {
        match self {
            Gen::T { a, alpha } => Some(Gen::Dt { a, alpha }),
            _ => None,
        }
    }
}

/// Generators are ordered by kind first (all `t` below all `dt`), then by
/// `(alpha, a)` for coordinates.
impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind_rank(), self.index_key()).cmp(&(other.kind_rank(), other.index_key()))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T { a, alpha } => write!(f, "t[{a},{alpha}]"),
            Gen::Dt { a, alpha } => write!(f, "dt[{a},{alpha}]"),
            Gen::E(i) => write!(f, "E_{i}"),
            Gen::F(i) => write!(f, "F_{i}"),
            Gen::K(i) => write!(f, "K_{i}"),
            Gen::Kinv(i) => write!(f, "Ki_{i}"),
            Gen::U { i, j } => write!(f, "u[{i},{j}]"),
        }
    }
}

/// A monomial: an ordered sequence of generators. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Gen; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_gens(gens: &[Gen]) -> Self {
        Word(SmallVec::from_slice(gens))
    }

    pub fn letter(g: Gen) -> Self {
        Word::from_gens(&[g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }

    pub fn degree(&self, grading: impl Fn(Gen) -> i64) -> i64 {
        self.0.iter().map(|&g| grading(g)).sum()
    }

    pub fn form_degree(&self) -> usize {
        self.0.iter().map(|g| g.form_degree()).sum()
    }

    /// `(polynomial degree, form degree)` of a word in `t`, `dt`.
    pub fn bidegree(&self) -> (usize, usize) {
        let k = self.form_degree();
        (self.len() - k, k)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A finite linear combination of words. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly<K> {
    terms: BTreeMap<Word, K>,
}

impl<K: Field> Default for NCPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> NCPoly<K> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn constant(c: K) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(K::one(), w)
    }

    pub fn gen(g: Gen) -> Self {
        Self::from_word(Word::letter(g))
    }

    pub fn term(c: K, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, K)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &K)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, K)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &K)> {
        self.terms.iter().next_back()
    }

    /// Maximal word length; `None` for zero.
    pub fn max_len(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    /// If every word has the same length, that length.
    pub fn homogeneous_len(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &K, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c.mul(x));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&K::one(), other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&K::one().neg(), other);
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&K::one().neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect(),
        }
    }

    /// Noncommutative product (concatenation of words).
    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                r.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        r
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> NCPoly<L> {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn try_map_coeffs<L: Field, E>(
        &self,
        f: impl Fn(&K) -> Result<L, E>,
    ) -> Result<NCPoly<L>, E> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Applies a linear map defined on words.
    pub fn map_words_linear(&self, mut f: impl FnMut(&Word) -> Self) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            r.add_scaled(c, &f(w));
        }
        r
    }

    /// Applies a fallible linear map defined on words.
    pub fn try_map_words_linear<E>(
        &self,
        mut f: impl FnMut(&Word) -> Result<Self, E>,
    ) -> Result<Self, E> {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            r.add_scaled(c, &f(w)?);
        }
        Ok(r)
    }
}

impl NCPoly<QRat> {
    pub fn specialize(&self, q0: &BigRational) -> Result<NCPoly<BigRational>, ScalarError> {
        self.try_map_coeffs(|c| c.specialize(q0))
    }
}

impl<K: Field> fmt::Display for NCPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let minus_one = K::one().neg();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 { "" } else { " + " };
            if c.is_one() {
                write!(f, "{sep}{w}")?;
            } else if *c == minus_one {
                let sep = if i == 0 { "-" } else { " - " };
                write!(f, "{sep}{w}")?;
            } else if w.is_empty() {
                write!(f, "{sep}({c})")?;
            } else {
                write!(f, "{sep}({c}) {w}")?;
            }
        }
        Ok(())
    }
}

impl<K: fmt::Debug> fmt::Debug for NCPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u8, alpha: u8) -> Gen {
        Gen::T { a, alpha }
    }

    fn dt(a: u8, alpha: u8) -> Gen {
        Gen::Dt { a, alpha }
    }

    #[test]
    fn generator_order() {
        assert!(t(2, 1) < t(1, 2));
        assert!(t(2, 2) < dt(1, 1));
        assert!(t(1, 1) < t(2, 1));
    }

    #[test]
    fn deglex_word_order() {
        let short = Word::from_gens(&[dt(1, 1)]);
        let long = Word::from_gens(&[t(1, 1), t(1, 1)]);
        assert!(short < long);
        let a = Word::from_gens(&[t(1, 1), dt(1, 1)]);
        let b = Word::from_gens(&[dt(1, 1), t(1, 1)]);
        assert!(a < b);
    }

    #[test]
    fn degree_is_additive() {
        let g = |x: Gen| x.form_degree() as i64 * 3 + 1;
        let u = Word::from_gens(&[t(1, 1), dt(2, 1)]);
        let v = Word::from_gens(&[dt(1, 1)]);
        assert_eq!(u.concat(&v).degree(g), u.degree(g) + v.degree(g));
        assert_eq!(u.concat(&v).bidegree(), (1, 2));
    }

    #[test]
    fn polynomial_arithmetic_drops_zeros() {
        let x = NCPoly::<QRat>::gen(t(1, 1));
        let y = NCPoly::<QRat>::gen(t(2, 1));
        let xy = x.mul(&y);
        let yx = y.mul(&x);
        let rel = xy.sub(&yx.scale(&QRat::q()));
        assert_eq!(rel.len(), 2);
        assert!(rel.sub(&rel).is_zero());
        assert_eq!(rel.homogeneous_len(), Some(2));
        assert_eq!(rel.leading().unwrap().0, &Word::from_gens(&[t(2, 1), t(1, 1)]));
    }

    #[test]
    fn rendering() {
        let p = NCPoly::term(QRat::q_pow(-2), Word::from_gens(&[t(1, 1), dt(1, 1)]))
            .sub(&NCPoly::from_word(Word::from_gens(&[dt(1, 1), t(1, 1)])));
        assert_eq!(p.to_string(), "(q^-2) t[1,1] dt[1,1] - dt[1,1] t[1,1]");
        assert_eq!(NCPoly::<QRat>::constant(QRat::from_int(3)).to_string(), "(3)");
        assert_eq!(NCPoly::<QRat>::zero().to_string(), "0");
    }
}
