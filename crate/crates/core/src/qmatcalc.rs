//! The Hecke R-matrix, the quadratic relations of the differential calculus
//! on the quantum matrix space Mat(m,n), its normal forms, the differential,
//! and flatness checks against classical dimensions.

use crate::freealg::oracle::{GradedQuotient, OracleError};
use crate::freealg::{derive_rules, Gen, NCPoly, RewriteError, RewriteSystem, Word};
use crate::matrix::SparseMatrix;
use crate::report::Report;
use crate::scalars::{Field, QRat, ScalarError};
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QmatError {
    #[error("R-matrix invariant violated: {0}")]
    RHatInvariant(String),
    #[error("flatness fails in bidegree ({d},{k}): {found} normal words, expected {expected}")]
    Flatness {
        d: usize,
        k: usize,
        found: usize,
        expected: usize,
    },
    #[error("index out of range: {0}")]
    Index(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `Rhat_{ij}^{i'j'}`: lower pair is the input, upper pair the output.
pub fn rhat_entry(i: usize, j: usize, ip: usize, jp: usize) -> QRat {
    if i == j && j == ip && ip == jp {
        QRat::q_pow(-1)
    } else if ip == j && jp == i && i != j {
        QRat::one()
    } else if i == ip && j == jp && i < j {
        QRat::q_pow(-1).sub(&QRat::q())
    } else {
        QRat::zero()
    }
}

/// The R-matrix as an operator on `C^N ⊗ C^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RHat {
    n: usize,
    matrix: SparseMatrix<QRat>,
}

impl RHat {
    /// Builds the R-matrix for size `N` and validates the Hecke and braid
    /// identities.
    pub fn new(n: usize) -> Result<Self, QmatError> {
        if n < 2 {
            return Err(QmatError::Index(format!("R-matrix size {n} < 2")));
        }
        let r = Self::unchecked(n);
        r.validate()?;
        Ok(r)
    }

    pub fn unchecked(n: usize) -> Self {
        let mut matrix = SparseMatrix::zeros(n * n);
        for i in 1..=n {
            for j in 1..=n {
                for ip in 1..=n {
                    for jp in 1..=n {
                        let x = rhat_entry(i, j, ip, jp);
                        matrix.set((ip - 1) * n + jp - 1, (i - 1) * n + j - 1, x);
                    }
                }
            }
        }
        RHat { n, matrix }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &SparseMatrix<QRat> {
        &self.matrix
    }

    /// Entry `Rhat_{ij}^{i'j'}` (one-based).
    pub fn entry(&self, i: usize, j: usize, ip: usize, jp: usize) -> QRat {
        let n = self.n;
        self.matrix.get((ip - 1) * n + jp - 1, (i - 1) * n + j - 1)
    }

    /// Overwrites one entry (fault injection).
    pub fn with_entry(mut self, i: usize, j: usize, ip: usize, jp: usize, x: QRat) -> Self {
        let n = self.n;
        self.matrix.set((ip - 1) * n + jp - 1, (i - 1) * n + j - 1, x);
        self
    }

    /// `(R - q^-1)(R + q)` is zero iff the Hecke identity holds.
    pub fn hecke_defect(&self) -> SparseMatrix<QRat> {
        let id = SparseMatrix::identity(self.n * self.n);
        let a = self.matrix.sub(&id.scale(&QRat::q_pow(-1)));
        let b = self.matrix.add(&id.scale(&QRat::q()));
        a.mul(&b)
    }

    /// `R12 R23 R12 - R23 R12 R23` on `(C^N)^{⊗3}`.
    pub fn braid_defect(&self) -> SparseMatrix<QRat> {
        let id = SparseMatrix::identity(self.n);
        let r12 = self.matrix.kron(&id);
        let r23 = id.kron(&self.matrix);
        r12.mul(&r23).mul(&r12).sub(&r23.mul(&r12).mul(&r23))
    }

    pub fn validate(&self) -> Result<(), QmatError> {
        let n = self.n;
        let witness = |m: &SparseMatrix<QRat>, what: &str| {
            let (r, c, x) = m.first_nonzero().unwrap();
            let pair = |k: usize| format!("({},{})", k / n + 1, k % n + 1);
            format!("{what} defect at output {} input {} is {x}", pair(r), pair(c))
        };
        let h = self.hecke_defect();
        if !h.is_zero() {
            return Err(QmatError::RHatInvariant(witness(&h, "Hecke")));
        }
        let b = self.braid_defect();
        if !b.is_zero() {
            let (r, c, x) = b.first_nonzero().unwrap();
            return Err(QmatError::RHatInvariant(format!(
                "braid defect at ({}, {}) is {x}",
                r + 1,
                c + 1
            )));
        }
        Ok(())
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("rhat").param("N", self.n);
        let h = self.hecke_defect();
        r.push(
            "Hecke identity (R - q^-1)(R + q) = 0",
            h.is_zero(),
            h.first_nonzero().map(|(i, j, x)| format!("entry ({},{}) = {x}", i + 1, j + 1)),
        );
        let b = self.braid_defect();
        r.push(
            "braid relation R12 R23 R12 = R23 R12 R23",
            b.is_zero(),
            b.first_nonzero().map(|(i, j, x)| format!("entry ({},{}) = {x}", i + 1, j + 1)),
        );
        r
    }
}

/// How the right-hand side of the coordinate relations orders its factors.
///
/// `Frt` reads it as `sum_{c,d} Rhat_{ab}^{cd} t_c^alpha t_d^beta`; `Swapped`
/// as `sum_{c,d} Rhat_{ab}^{cd} t_d^beta t_c^alpha`. Only `Frt` yields a flat
/// algebra; `Swapped` is kept to demonstrate that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoordinateOrdering {
    #[default]
    Frt,
    Swapped,
}

/// Which tensor factor an index pair of the R-matrix refers to inside the
/// relations. `Reversed` uses `Rhat_{ji}^{j'i'}` where `Rhat_{ij}^{i'j'}` is
/// written, so the `q^-1 - q` entry sits on decreasing pairs. Only
/// `Reversed` makes the embedding into the dual of U_q sl_{m+n} (with the
/// coproduct and natural representation used here) a homomorphism;
/// `AsWritten` yields the same algebra with `q` and `q^-1` exchanged in the
/// coordinate relations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FactorOrder {
    AsWritten,
    #[default]
    Reversed,
}

/// Reading of the relation families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Conventions {
    pub ordering: CoordinateOrdering,
    pub factors: FactorOrder,
}

fn t(a: usize, alpha: usize) -> Gen {
    Gen::T {
        a: a as u8,
        alpha: alpha as u8,
    }
}

fn dt(a: usize, alpha: usize) -> Gen {
    Gen::Dt {
        a: a as u8,
        alpha: alpha as u8,
    }
}

fn w2(x: Gen, y: Gen) -> Word {
    Word::from_gens(&[x, y])
}

/// The three relation families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRelations {
    pub tt: Vec<NCPoly<QRat>>,
    pub tdt: Vec<NCPoly<QRat>>,
    pub dtdt: Vec<NCPoly<QRat>>,
}

impl OmegaRelations {
    pub fn all(&self) -> Vec<NCPoly<QRat>> {
        self.tt.iter().chain(&self.tdt).chain(&self.dtdt).cloned().collect()
    }

    /// Copy without any relation whose leading word is that of the first
    /// relation (fault injection). Removing a single relation is not enough
    /// when several index tuples give proportional relations.
    pub fn dropping_first(&self) -> Self {
        let Some(lead) = self.all().first().and_then(|p| p.leading().map(|(w, _)| w.clone())) else {
            return self.clone();
        };
        let keep = |fam: &Vec<NCPoly<QRat>>| -> Vec<NCPoly<QRat>> {
            fam.iter().filter(|p| p.leading().map(|(w, _)| w) != Some(&lead)).cloned().collect()
        };
        OmegaRelations {
            tt: keep(&self.tt),
            tdt: keep(&self.tdt),
            dtdt: keep(&self.dtdt),
        }
    }
}

/// Expands the defining relations of the calculus for every index tuple
/// `(a, b, alpha, beta)`, written as `lhs - rhs`, tautologies dropped.
/// Greek indices range over `1..=m`, Latin over `1..=n`.
pub fn omega_relations(m: usize, n: usize) -> OmegaRelations {
    omega_relations_with(m, n, Conventions::default())
}

pub fn omega_relations_with(m: usize, n: usize, conv: Conventions) -> OmegaRelations {
    match conv.factors {
        FactorOrder::AsWritten => omega_relations_from(m, n, conv.ordering, rhat_entry),
        FactorOrder::Reversed => {
            omega_relations_from(m, n, conv.ordering, |i, j, ip, jp| rhat_entry(j, i, jp, ip))
        }
    }
}

pub fn omega_relations_from(
    m: usize,
    n: usize,
    ordering: CoordinateOrdering,
    r: impl Fn(usize, usize, usize, usize) -> QRat,
) -> OmegaRelations {
    let mut tt = Vec::new();
    let mut tdt = Vec::new();
    let mut dtdt = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            for al in 1..=m {
                for be in 1..=m {
                    let mut rel_tt = NCPoly::zero();
                    for ga in 1..=m {
                        for de in 1..=m {
                            rel_tt.add_term(w2(t(a, ga), t(b, de)), r(ga, de, al, be));
                        }
                    }
                    for c in 1..=n {
                        for d in 1..=n {
                            let word = match ordering {
                                CoordinateOrdering::Frt => w2(t(c, al), t(d, be)),
                                CoordinateOrdering::Swapped => w2(t(d, be), t(c, al)),
                            };
                            rel_tt.add_term(word, r(a, b, c, d).neg());
                        }
                    }
                    let mut rel_tdt = NCPoly::term(QRat::from_int(-1), w2(dt(a, al), t(b, be)));
                    let mut rel_dtdt = NCPoly::from_word(w2(dt(a, al), dt(b, be)));
                    for ap in 1..=n {
                        for bp in 1..=n {
                            let latin = r(a, b, ap, bp);
                            if latin.is_zero() {
                                continue;
                            }
                            for gp in 1..=m {
                                for dp in 1..=m {
                                    let c = r(gp, dp, al, be).mul(&latin);
                                    rel_tdt.add_term(w2(t(ap, gp), dt(bp, dp)), c.clone());
                                    rel_dtdt.add_term(w2(dt(ap, gp), dt(bp, dp)), c);
                                }
                            }
                        }
                    }
                    for (fam, rel) in [(&mut tt, rel_tt), (&mut tdt, rel_tdt), (&mut dtdt, rel_dtdt)] {
                        if !rel.is_zero() {
                            fam.push(rel);
                        }
                    }
                }
            }
        }
    }
    OmegaRelations { tt, tdt, dtdt }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Classical dimension of bidegree `(d, k)`: `C(mn+d-1, d) * C(mn, k)`.
pub fn classical_dimension(mn: usize, d: usize, k: usize) -> usize {
    let sym = if d == 0 { 1 } else { binomial(mn + d - 1, d) };
    sym * binomial(mn, k)
}

/// The calculus as a quotient of the free algebra on `t`, `dt`, given by a
/// rewrite system over any exact field.
#[derive(Debug)]
pub struct Calculus<K> {
    pub m: usize,
    pub n: usize,
    pub rules: RewriteSystem<K>,
}

impl<K: Field> Clone for Calculus<K> {
    fn clone(&self) -> Self {
        Calculus {
            m: self.m,
            n: self.n,
            rules: self.rules.clone(),
        }
    }
}

impl<K: Field> Calculus<K> {
    pub fn coordinates(&self) -> Vec<Gen> {
        coordinates(self.m, self.n)
    }

    /// `t` generators then `dt` generators, ascending.
    pub fn generators(&self) -> Vec<Gen> {
        let mut g = self.coordinates();
        g.extend(g.clone().into_iter().map(|x| x.differential().unwrap()));
        g
    }

    pub fn check_index(&self, g: Gen) -> Result<(), QmatError> {
        match g {
            Gen::T { a, alpha } | Gen::Dt { a, alpha } => {
                let (a, alpha) = (a as usize, alpha as usize);
                if a == 0 || a > self.n || alpha == 0 || alpha > self.m {
                    return Err(QmatError::Index(format!("{g} with (m,n)=({},{})", self.m, self.n)));
                }
                Ok(())
            }
            _ => Err(QmatError::Index(format!("{g} is not a generator of the calculus"))),
        }
    }

    pub fn nf(&self, p: &NCPoly<K>) -> Result<NCPoly<K>, QmatError> {
        Ok(self.rules.nf(p)?)
    }

    pub fn mul(&self, a: &NCPoly<K>, b: &NCPoly<K>) -> Result<NCPoly<K>, QmatError> {
        Ok(self.rules.mul(a, b)?)
    }

    /// Normal words of bidegree `(d, k)`.
    pub fn basis(&self, d: usize, k: usize) -> Vec<Word> {
        let keep = move |w: &Word| {
            let (pd, fd) = w.bidegree();
            pd <= d && fd <= k
        };
        self.rules.normal_words(&self.generators(), d + k, &keep)
    }

    /// Normal words of total degree at most `maxdeg`, ordered by total
    /// degree then monomial order.
    pub fn basis_up_to(&self, maxdeg: usize) -> Vec<Word> {
        let gens = self.generators();
        (0..=maxdeg)
            .flat_map(|len| self.rules.normal_words(&gens, len, &|_| true))
            .collect()
    }

    /// Graded derivation with `d t = dt`, `d dt = 0`, reduced to normal form.
    pub fn differential(&self, p: &NCPoly<K>) -> Result<NCPoly<K>, QmatError> {
        self.nf(&differential_free(p))
    }

    pub fn specialize_with<L: Field, E>(
        &self,
        f: impl Fn(&K) -> Result<L, E>,
    ) -> Result<Calculus<L>, E> {
        Ok(Calculus {
            m: self.m,
            n: self.n,
            rules: self.rules.try_map_coeffs(f)?,
        })
    }
}

impl Calculus<QRat> {
    pub fn specialize(&self, q0: &BigRational) -> Result<Calculus<BigRational>, ScalarError> {
        self.specialize_with(|c| c.specialize(q0))
    }
}

/// The graded Leibniz extension of `d` on the free algebra (no reduction).
pub fn differential_free<K: Field>(p: &NCPoly<K>) -> NCPoly<K> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let l = w.letters();
        let mut sign_odd = false;
        for (j, g) in l.iter().enumerate() {
            if let Some(dg) = g.differential() {
                let mut nw = Word::from_gens(&l[..j]);
                nw.push(dg);
                for &h in &l[j + 1..] {
                    nw.push(h);
                }
                let coeff = if sign_odd { c.neg() } else { c.clone() };
                out.add_term(nw, coeff);
            }
            if g.form_degree() == 1 {
                sign_odd = !sign_odd;
            }
        }
    }
    out
}

/// `t[a,alpha]` sorted ascending.
pub fn coordinates(m: usize, n: usize) -> Vec<Gen> {
    let mut g: Vec<Gen> = (1..=m).flat_map(|al| (1..=n).map(move |a| t(a, al))).collect();
    g.sort();
    g
}

/// The calculus with its relation families.
#[derive(Clone, Debug)]
pub struct OmegaPresentation {
    pub relations: OmegaRelations,
    pub calculus: Calculus<QRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessRow {
    pub d: usize,
    pub k: usize,
    pub normal_words: usize,
    pub oracle_dim: usize,
    pub classical: usize,
}

impl FlatnessRow {
    pub fn ok(&self) -> bool {
        self.normal_words == self.oracle_dim && self.oracle_dim == self.classical
    }
}

/// Builds the calculus and certifies flatness for polynomial degree up to
/// `checkdeg` and form degree up to `min(mn, checkdeg)`.
pub fn build_calculus(m: usize, n: usize, checkdeg: usize) -> Result<OmegaPresentation, QmatError> {
    build_calculus_with(m, n, checkdeg, Conventions::default())
}

pub fn build_calculus_with(
    m: usize,
    n: usize,
    checkdeg: usize,
    conv: Conventions,
) -> Result<OmegaPresentation, QmatError> {
    if m == 0 || n == 0 {
        return Err(QmatError::Index(format!("(m,n)=({m},{n}) must be positive")));
    }
    let relations = omega_relations_with(m, n, conv);
    let rules = derive_rules(&relations.all())?;
    let calculus = Calculus { m, n, rules };
    let mn = m * n;
    for d in 0..=checkdeg {
        for k in 0..=mn.min(checkdeg) {
            let found = calculus.basis(d, k).len();
            let expected = classical_dimension(mn, d, k);
            if found != expected {
                return Err(QmatError::Flatness { d, k, found, expected });
            }
        }
    }
    Ok(OmegaPresentation { relations, calculus })
}

impl OmegaPresentation {
    /// Presentation from explicit relations, without the flatness gate.
    pub fn from_relations(m: usize, n: usize, relations: OmegaRelations) -> Result<Self, QmatError> {
        let rules = derive_rules(&relations.all())?;
        Ok(OmegaPresentation {
            relations,
            calculus: Calculus { m, n, rules },
        })
    }

    pub fn m(&self) -> usize {
        self.calculus.m
    }

    pub fn n(&self) -> usize {
        self.calculus.n
    }

    /// Per-bidegree comparison of normal-word counts, the row-reduction
    /// oracle, and classical dimensions, for `d <= dmax` and every form
    /// degree `k <= mn`.
    pub fn flatness_table(&self, dmax: usize) -> Result<Vec<FlatnessRow>, QmatError> {
        let mn = self.m() * self.n();
        let keep = move |w: &Word| {
            let (pd, fd) = w.bidegree();
            pd <= dmax && fd <= mn
        };
        let gens = self.calculus.generators();
        let mut oracle = GradedQuotient::new(&self.relations.all(), &gens, &keep)?;
        let mut rows = Vec::new();
        for len in 0..=(dmax + mn) {
            let basis = oracle.basis(len).to_vec();
            for k in 0..=mn.min(len) {
                let d = len - k;
                if d > dmax {
                    continue;
                }
                let oracle_dim = basis.iter().filter(|w| w.bidegree() == (d, k)).count();
                rows.push(FlatnessRow {
                    d,
                    k,
                    normal_words: self.calculus.basis(d, k).len(),
                    oracle_dim,
                    classical: classical_dimension(mn, d, k),
                });
            }
        }
        rows.sort_by_key(|r| (r.d, r.k));
        Ok(rows)
    }

    pub fn flatness_report(&self, dmax: usize) -> Result<Report, QmatError> {
        let mut r = Report::new("flatness")
            .param("m", self.m())
            .param("n", self.n())
            .param("maxdeg", dmax);
        for row in self.flatness_table(dmax)? {
            r.push(
                format!("bidegree ({},{})", row.d, row.k),
                row.ok(),
                Some(format!(
                    "normal words {}, oracle {}, classical {}",
                    row.normal_words, row.oracle_dim, row.classical
                )),
            );
        }
        Ok(r)
    }

    /// `d^2 = 0`, graded Leibniz, descent of `d` to the quotient, and
    /// vanishing above the top form degree, on normal monomials of total
    /// degree `<= maxdeg`.
    pub fn differential_report(&self, maxdeg: usize) -> Result<Report, QmatError> {
        let c = &self.calculus;
        let mut r = Report::new("differential")
            .param("m", self.m())
            .param("n", self.n())
            .param("maxdeg", maxdeg);
        let basis = c.basis_up_to(maxdeg);
        let mut bad = None;
        for w in &basis {
            let p = NCPoly::from_word(w.clone());
            let dd = c.differential(&c.differential(&p)?)?;
            if !dd.is_zero() {
                bad = Some(format!("d d ({w}) = {dd}"));
                break;
            }
        }
        r.push("d^2 = 0 on normal monomials", bad.is_none(), bad);

        let mut bad = None;
        'outer: for x in &basis {
            for y in &basis {
                if x.len() + y.len() > maxdeg {
                    continue;
                }
                let (px, py) = (NCPoly::from_word(x.clone()), NCPoly::from_word(y.clone()));
                let lhs = c.differential(&c.mul(&px, &py)?)?;
                let mut rhs = c.mul(&c.differential(&px)?, &py)?;
                let second = c.mul(&px, &c.differential(&py)?)?;
                let sign = if x.form_degree() % 2 == 1 { QRat::from_int(-1) } else { QRat::one() };
                rhs.add_scaled(&sign, &second);
                if lhs != rhs {
                    bad = Some(format!("p = {x}, r = {y}: {lhs} != {rhs}"));
                    break 'outer;
                }
            }
        }
        r.push("graded Leibniz rule on pairs of normal monomials", bad.is_none(), bad);

        let mut bad = None;
        for rel in self.relations.all() {
            let d = c.differential(&rel)?;
            if !d.is_zero() {
                bad = Some(format!("d({rel}) = {d}"));
                break;
            }
        }
        r.push("d maps every relation into the ideal", bad.is_none(), bad);

        let mn = self.m() * self.n();
        let top = c.basis(0, mn + 1).len();
        r.push(
            format!("no normal words of form degree {}", mn + 1),
            top == 0,
            Some(format!("{top} normal words")),
        );
        Ok(r)
    }

    /// JSON dump of the rewrite rules.
    pub fn rules_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m(),
            "n": self.n(),
            "rules": self.calculus.rules.render(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhat_entries() {
        let r = RHat::new(2).unwrap();
        assert_eq!(r.entry(1, 1, 1, 1), QRat::q_pow(-1));
        assert_eq!(r.entry(2, 1, 1, 2), QRat::one());
        assert_eq!(r.entry(1, 2, 1, 2), QRat::q_pow(-1).sub(&QRat::q()));
        assert_eq!(r.entry(2, 1, 2, 1), QRat::zero());
    }

    #[test]
    fn rhat_identities_and_fault() {
        for n in 2..=4 {
            assert!(RHat::new(n).is_ok());
        }
        let flipped = RHat::unchecked(3).with_entry(1, 2, 1, 2, QRat::q().sub(&QRat::q_pow(-1)));
        assert!(matches!(flipped.validate(), Err(QmatError::RHatInvariant(_))));
    }

    #[test]
    fn relations_for_one_by_one() {
        let rels = omega_relations(1, 1);
        assert!(rels.tt.is_empty());
        let tt = Word::from_gens(&[t(1, 1), dt(1, 1)]);
        let dtt = Word::from_gens(&[dt(1, 1), t(1, 1)]);
        assert_eq!(
            rels.tdt,
            vec![NCPoly::term(QRat::q_pow(-2), tt).sub(&NCPoly::from_word(dtt))]
        );
        let dd = Word::from_gens(&[dt(1, 1), dt(1, 1)]);
        assert_eq!(rels.dtdt, vec![NCPoly::term(QRat::q_pow(-2).add(&QRat::one()), dd)]);
    }

    #[test]
    fn one_by_one_rules() {
        let om = build_calculus(1, 1, 4).unwrap();
        let rules = om.calculus.rules.render();
        assert_eq!(
            rules,
            vec!["dt[1,1] t[1,1] -> (q^-2) t[1,1] dt[1,1]", "dt[1,1] dt[1,1] -> 0"]
        );
    }

    #[test]
    fn quantum_plane_from_coordinates() {
        // m = 1: t_2 t_1 = q^-1 t_1 t_2, and q t_1 t_2 read as written
        let lead = Word::from_gens(&[t(2, 1), t(1, 1)]);
        let tail = |c| NCPoly::term(c, Word::from_gens(&[t(1, 1), t(2, 1)]));
        let om = build_calculus(1, 2, 2).unwrap();
        assert_eq!(om.calculus.rules.rule_for(&lead).unwrap().tail, tail(QRat::q_pow(-1)));
        let conv = Conventions {
            factors: FactorOrder::AsWritten,
            ..Conventions::default()
        };
        let om = build_calculus_with(1, 2, 2, conv).unwrap();
        assert_eq!(om.calculus.rules.rule_for(&lead).unwrap().tail, tail(QRat::q()));
    }

    #[test]
    fn swapped_ordering_is_not_flat() {
        assert!(matches!(
            build_calculus_with(
                1,
                2,
                2,
                Conventions {
                    ordering: CoordinateOrdering::Swapped,
                    ..Conventions::default()
                }
            ),
            Err(QmatError::Flatness { .. })
        ));
    }

    #[test]
    fn differential_examples() {
        let om = build_calculus(1, 1, 3).unwrap();
        let c = &om.calculus;
        let tp = NCPoly::<QRat>::gen(t(1, 1));
        assert_eq!(c.differential(&tp).unwrap(), NCPoly::gen(dt(1, 1)));
        let t2 = tp.mul(&tp);
        assert_eq!(
            c.differential(&t2).unwrap(),
            NCPoly::term(QRat::one().add(&QRat::q_pow(-2)), Word::from_gens(&[t(1, 1), dt(1, 1)]))
        );
        assert!(c.differential(&NCPoly::gen(dt(1, 1))).unwrap().is_zero());
    }

    #[test]
    fn small_flatness_tables() {
        let om = build_calculus(1, 2, 3).unwrap();
        let rows = om.flatness_table(3).unwrap();
        assert!(rows.iter().all(FlatnessRow::ok), "{rows:?}");
        let get = |d, k| rows.iter().find(|r| r.d == d && r.k == k).unwrap().oracle_dim;
        assert_eq!(get(2, 0), 3);
        assert_eq!(get(0, 2), 1);
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(classical_dimension(4, 1, 1), 16);
        assert_eq!(classical_dimension(1, 5, 0), 1);
        assert_eq!(classical_dimension(2, 0, 3), 0);
    }
}
