//! The U_q sl_{m+n} action on the calculus: derivation of the generator
//! table from the dual pairing, the module-algebra extension to all of the
//! calculus, and the verification suites.
//!
//! Conventions: `<xi . f, eta> = <f, eta xi>`, and on products
//! `E(fg) = (Ef)g + (Kf)(Eg)`, `F(fg) = (Ff)(Ki g) + f(Fg)`, `K` grouplike.
//! On differentials `xi . dt := d(xi . t)`.

use crate::freealg::linalg::solve_multi;
use crate::freealg::{Gen, NCPoly, Word};
use crate::pairing::{height, monomial_weight, FunctionalTable, Pairing, PairingError, Weight};
use crate::qmatcalc::{build_calculus, Calculus, OmegaPresentation, QmatError};
use crate::report::Report;
use crate::scalars::{Field, QRat, ScalarError};
use crate::uq::{self, NamedRelation, UqGrading, UqPresentation};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{0} missing from the action table")]
    MissingGenerator(String),
    #[error(
        "probe matrix for {generator} . {coordinate} has rank {rank} < {columns} at L = {max_len}; increase L"
    )]
    RankDeficient {
        generator: String,
        coordinate: String,
        rank: usize,
        columns: usize,
        max_len: usize,
    },
    #[error("no polynomial of degree <= 3 matches {generator} . {coordinate}")]
    Inconsistent { generator: String, coordinate: String },
    #[error("invalid specialization: {0}")]
    Precondition(String),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Calculus(#[from] QmatError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Evidence that a table entry is the unique solution of its probe system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub generator: String,
    pub coordinate: String,
    /// Ansatz degree bound actually used (2, or 3 after escalation).
    pub degree: usize,
    /// Normal monomials of the target weight up to that degree.
    pub columns: usize,
    pub rank: usize,
    /// Probe words of the target weight and length `<= L - 1`.
    pub probes: usize,
}

/// `xi . t_a^alpha` for every Chevalley generator and coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionTable<K> {
    pub m: usize,
    pub n: usize,
    pub max_len: usize,
    pub entries: BTreeMap<Gen, BTreeMap<Gen, NCPoly<K>>>,
    pub certificates: Vec<Certificate>,
}

impl<K: Field> ActionTable<K> {
    pub fn entry(&self, xi: Gen, t: Gen) -> Option<&NCPoly<K>> {
        self.entries.get(&xi)?.get(&t)
    }

    pub fn set_entry(&mut self, xi: Gen, t: Gen, p: NCPoly<K>) {
        self.entries.entry(xi).or_default().insert(t, p);
    }

    pub fn try_map_coeffs<L: Field, E>(&self, f: impl Fn(&K) -> Result<L, E>) -> Result<ActionTable<L>, E> {
        let mut entries = BTreeMap::new();
        for (xi, row) in &self.entries {
            let mut out = BTreeMap::new();
            for (t, p) in row {
                out.insert(*t, p.try_map_coeffs(&f)?);
            }
            entries.insert(*xi, out);
        }
        Ok(ActionTable {
            m: self.m,
            n: self.n,
            max_len: self.max_len,
            entries,
            certificates: self.certificates.clone(),
        })
    }

    /// `{"m", "n", "L", "rank", "actions": {generator: {coordinate: poly}}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let actions: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(xi, row)| {
                let row: serde_json::Map<String, serde_json::Value> =
                    row.iter().map(|(t, p)| (t.to_string(), p.to_string().into())).collect();
                (xi.to_string(), row.into())
            })
            .collect();
        serde_json::json!({
            "m": self.m,
            "n": self.n,
            "L": self.max_len,
            "rank": self.certificates,
            "actions": actions,
        })
    }
}

impl ActionTable<QRat> {
    pub fn specialize(&self, q0: &BigRational) -> Result<ActionTable<BigRational>, ScalarError> {
        self.try_map_coeffs(|c| c.specialize(q0))
    }
}

/// Solves for `xi . t` among normal monomials of the target weight.
///
/// The target functional `eta -> <i(t), eta xi>` is supported on the weight
/// `wt(t) - wt(xi)`, and `i` preserves weights, so monomials of any other
/// weight cannot occur in the answer.
pub fn derive_action(
    pairing: &Pairing,
    calculus: &Calculus<QRat>,
    xi: Gen,
    t: Gen,
) -> Result<(NCPoly<QRat>, Certificate), ActionError> {
    let (m, n) = (pairing.m(), pairing.n());
    calculus.check_index(t)?;
    let ix = pairing.index().clone();
    let f = pairing.monomial(&Word::letter(t))?;
    let target: HashMap<usize, QRat> = f.shifted(xi).into_iter().collect();
    let weight: Weight = {
        let tw = monomial_weight(m, n, &Word::letter(t));
        let gw = ix.generator_weight(xi);
        tw.iter().zip(&gw).map(|(a, b)| a - b).collect()
    };
    let probe_limit = ix.count_up_to(ix.max_len().saturating_sub(1));
    let probes: Vec<usize> = ix
        .bucket(&weight)
        .iter()
        .copied()
        .filter(|&i| i < probe_limit)
        .collect();
    debug_assert!(target.keys().all(|i| ix.weight(*i) == &weight));
    for degree in [2, 3] {
        let columns: Vec<Word> = (0..=degree)
            .flat_map(|d| calculus.basis(d, 0))
            .filter(|w| monomial_weight(m, n, w) == weight)
            .collect();
        let tables: Vec<std::sync::Arc<FunctionalTable>> = columns
            .iter()
            .map(|w| pairing.monomial(w))
            .collect::<Result<_, _>>()?;
        let rows = probes.iter().map(|&eta| {
            let coeffs = tables.iter().map(|tb| tb.value(eta)).collect();
            let rhs = vec![target.get(&eta).cloned().unwrap_or_else(QRat::zero)];
            (coeffs, rhs)
        });
        let sol = solve_multi(columns.len(), 1, rows);
        let certificate = Certificate {
            generator: xi.to_string(),
            coordinate: t.to_string(),
            degree,
            columns: columns.len(),
            rank: sol.rank,
            probes: probes.len(),
        };
        if !sol.consistent[0] {
            continue;
        }
        if sol.rank < columns.len() {
            return Err(ActionError::RankDeficient {
                generator: xi.to_string(),
                coordinate: t.to_string(),
                rank: sol.rank,
                columns: columns.len(),
                max_len: ix.max_len(),
            });
        }
        let x = sol.solutions[0].clone().expect("consistent full-rank system");
        let p = NCPoly::from_terms(columns.into_iter().zip(x));
        return Ok((p, certificate));
    }
    Err(ActionError::Inconsistent {
        generator: xi.to_string(),
        coordinate: t.to_string(),
    })
}

/// Derives every entry at a fixed probe cutoff.
pub fn derive_table(
    pairing: &Pairing,
    calculus: &Calculus<QRat>,
) -> Result<ActionTable<QRat>, ActionError> {
    let mut table = ActionTable {
        m: pairing.m(),
        n: pairing.n(),
        max_len: pairing.max_len(),
        entries: BTreeMap::new(),
        certificates: Vec::new(),
    };
    for xi in uq::generators(pairing.m() + pairing.n()) {
        for t in calculus.coordinates() {
            let (p, cert) = derive_action(pairing, calculus, xi, t)?;
            table.set_entry(xi, t, p);
            table.certificates.push(cert);
        }
    }
    Ok(table)
}

/// Smallest cutoff at which every entry can be rank certified: the target
/// of `F_m . t` has weight height up to `m + n`, and probes stop at `L - 1`.
pub fn sufficient_cutoff(m: usize, n: usize) -> usize {
    m + n + 1
}

/// Derives the table starting at cutoff `start`, raising it while some
/// probe matrix is rank deficient, up to `cap`.
pub fn derive_table_auto(
    m: usize,
    n: usize,
    calculus: &Calculus<QRat>,
    start: usize,
    cap: usize,
) -> Result<(ActionTable<QRat>, Pairing), ActionError> {
    let mut len = start;
    loop {
        let pairing = Pairing::new(m, n, len);
        match derive_table(&pairing, calculus) {
            Ok(t) => return Ok((t, pairing)),
            Err(ActionError::RankDeficient { .. }) if len < cap => len += 1,
            Err(e) => return Err(e),
        }
    }
}

/// The action of U_q sl_{m+n} on the calculus, extended from the generator
/// table by the product rules. Results are memoized per generator and word.
pub struct ModuleAction<K> {
    calculus: Calculus<K>,
    table: ActionTable<K>,
    dt_entries: BTreeMap<(Gen, Gen), NCPoly<K>>,
    memo: Mutex<HashMap<(Gen, Word), NCPoly<K>>>,
}

impl<K: Field> ModuleAction<K> {
    pub fn new(calculus: Calculus<K>, table: ActionTable<K>) -> Result<Self, ActionError> {
        let mut dt_entries = BTreeMap::new();
        for (xi, row) in &table.entries {
            for (t, p) in row {
                let dt = t.differential().expect("coordinate");
                dt_entries.insert((*xi, dt), calculus.differential(p)?);
            }
        }
        Ok(ModuleAction {
            calculus,
            table,
            dt_entries,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn calculus(&self) -> &Calculus<K> {
        &self.calculus
    }

    pub fn table(&self) -> &ActionTable<K> {
        &self.table
    }

    fn letter(&self, xi: Gen, g: Gen) -> Result<NCPoly<K>, ActionError> {
        let found = match g {
            Gen::T { .. } => self.table.entry(xi, g).cloned(),
            Gen::Dt { .. } => self.dt_entries.get(&(xi, g)).cloned(),
            _ => None,
        };
        found.ok_or_else(|| ActionError::MissingGenerator(format!("{xi} on {g}")))
    }

    /// `xi . w` for a word of the free algebra on `t`, `dt`, reduced.
    pub fn act_gen_word(&self, xi: Gen, w: &Word) -> Result<NCPoly<K>, ActionError> {
        if w.is_empty() {
            return Ok(NCPoly::constant(uq::counit(&Word::letter(xi))));
        }
        if w.len() == 1 {
            return self.letter(xi, w.letters()[0]);
        }
        if let Some(p) = self.memo.lock().unwrap().get(&(xi, w.clone())) {
            return Ok(p.clone());
        }
        let head = Word::letter(w.letters()[0]);
        let rest = Word::from_gens(&w.letters()[1..]);
        let c = &self.calculus;
        let out = match xi {
            Gen::K(_) | Gen::Kinv(_) => {
                c.mul(&self.act_gen_word(xi, &head)?, &self.act_gen_word(xi, &rest)?)?
            }
            Gen::E(i) => {
                let a = c.mul(&self.act_gen_word(xi, &head)?, &NCPoly::from_word(rest.clone()))?;
                let b = c.mul(
                    &self.act_gen_word(Gen::K(i), &head)?,
                    &self.act_gen_word(xi, &rest)?,
                )?;
                a.add(&b)
            }
            Gen::F(i) => {
                let a = c.mul(
                    &self.act_gen_word(xi, &head)?,
                    &self.act_gen_word(Gen::Kinv(i), &rest)?,
                )?;
                let b = c.mul(&NCPoly::from_word(head), &self.act_gen_word(xi, &rest)?)?;
                a.add(&b)
            }
            _ => return Err(ActionError::MissingGenerator(xi.to_string())),
        };
        self.memo.lock().unwrap().insert((xi, w.clone()), out.clone());
        Ok(out)
    }

    pub fn act_gen(&self, xi: Gen, p: &NCPoly<K>) -> Result<NCPoly<K>, ActionError> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(c, &self.act_gen_word(xi, w)?);
        }
        Ok(out)
    }

    /// `(x_1 ... x_k) . p = x_1 . (... (x_k . p))`.
    pub fn act_word(&self, w: &Word, p: &NCPoly<K>) -> Result<NCPoly<K>, ActionError> {
        let mut cur = p.clone();
        for &xi in w.letters().iter().rev() {
            cur = self.act_gen(xi, &cur)?;
        }
        Ok(cur)
    }

    /// Action of a polynomial in the U_q generators.
    pub fn act(&self, u: &NCPoly<K>, p: &NCPoly<K>) -> Result<NCPoly<K>, ActionError> {
        let mut out = NCPoly::zero();
        for (w, c) in u.terms() {
            out.add_scaled(c, &self.act_word(w, p)?);
        }
        Ok(out)
    }
}

/// Operator relations, descent to the quotient, d-equivariance, and
/// K-diagonality, each over every normal monomial of total degree
/// `<= maxdeg`.
pub fn verify_module_algebra<K: Field>(
    action: &ModuleAction<K>,
    uq_relations: &[NamedRelation<K>],
    omega_relations: &[NCPoly<K>],
    maxdeg: usize,
) -> Result<Report, ActionError> {
    let c = action.calculus();
    let big_n = c.m + c.n;
    let mut r = Report::new("module-algebra")
        .param("m", c.m)
        .param("n", c.n)
        .param("maxdeg", maxdeg)
        .param("L", action.table().max_len);
    let basis = c.basis_up_to(maxdeg);
    r.note("basis", format!("{} normal monomials", basis.len()));

    for rel in uq_relations {
        let mut witness = None;
        for w in &basis {
            let v = action.act(&rel.poly, &NCPoly::from_word(w.clone()))?;
            if !v.is_zero() {
                witness = Some(format!("on {w}: {v}"));
                break;
            }
        }
        r.push(format!("(i) relation {} annihilates the basis", rel.name), witness.is_none(), witness);
    }

    let gens = uq::generators(big_n);
    let mut witness = None;
    'rels: for rel in omega_relations {
        for &xi in &gens {
            let v = action.act_gen(xi, rel)?;
            if !v.is_zero() {
                witness = Some(format!("{xi} . ({rel}) = {v}"));
                break 'rels;
            }
        }
    }
    r.push(
        format!("(ii) every generator maps each of the {} relations into the ideal", omega_relations.len()),
        witness.is_none(),
        witness,
    );

    let mut witness = None;
    'eq: for w in &basis {
        let p = NCPoly::from_word(w.clone());
        let dp = c.differential(&p)?;
        for &xi in &gens {
            let lhs = action.act_gen(xi, &dp)?;
            let rhs = c.differential(&action.act_gen(xi, &p)?)?;
            if lhs != rhs {
                witness = Some(format!("{xi} on d({w}): {lhs} != {rhs}"));
                break 'eq;
            }
        }
    }
    r.push("(iii) d commutes with every generator", witness.is_none(), witness);

    let mut witness = None;
    'k: for w in &basis {
        for &xi in gens.iter().filter(|g| matches!(g, Gen::K(_) | Gen::Kinv(_))) {
            let v = action.act_gen_word(xi, w)?;
            if v.len() != 1 || v.coeff(w).is_zero() {
                witness = Some(format!("{xi} . {w} = {v}"));
                break 'k;
            }
        }
    }
    r.push("K_i and Ki_i act diagonally on normal monomials", witness.is_none(), witness);

    let mut witness = None;
    'inv: for t in c.generators() {
        for i in 1..big_n as u8 {
            let p = NCPoly::gen(t);
            let back = action.act_gen(Gen::Kinv(i), &action.act_gen(Gen::K(i), &p)?)?;
            if back != p {
                witness = Some(format!("Ki_{i} K_{i} . {t} = {back}"));
                break 'inv;
            }
        }
    }
    r.push("Ki_i undoes K_i on every generator", witness.is_none(), witness);
    Ok(r)
}

/// Everything needed to run the suites at generic `q`.
pub struct HiddenAction {
    pub presentation: OmegaPresentation,
    pub pairing: Pairing,
    pub action: ModuleAction<QRat>,
}

impl HiddenAction {
    /// Builds the calculus and derives the table, raising the probe cutoff
    /// from `start` as needed.
    pub fn build(m: usize, n: usize, start: usize) -> Result<Self, ActionError> {
        let presentation = build_calculus(m, n, 2)?;
        let cap = start.max(sufficient_cutoff(m, n));
        let (table, pairing) = derive_table_auto(m, n, &presentation.calculus, start, cap)?;
        let action = ModuleAction::new(presentation.calculus.clone(), table)?;
        Ok(HiddenAction {
            presentation,
            pairing,
            action,
        })
    }

    /// Derives the table at exactly the cutoff `max_len`.
    pub fn build_at(m: usize, n: usize, max_len: usize) -> Result<Self, ActionError> {
        let presentation = build_calculus(m, n, 2)?;
        let pairing = Pairing::new(m, n, max_len);
        let table = derive_table(&pairing, &presentation.calculus)?;
        let action = ModuleAction::new(presentation.calculus.clone(), table)?;
        Ok(HiddenAction {
            presentation,
            pairing,
            action,
        })
    }

    pub fn table(&self) -> &ActionTable<QRat> {
        self.action.table()
    }

    /// Replaces the derived table, e.g. to inject a fault.
    pub fn with_table(mut self, table: ActionTable<QRat>) -> Result<Self, ActionError> {
        self.action = ModuleAction::new(self.presentation.calculus.clone(), table)?;
        Ok(self)
    }

    pub fn verify(&self, maxdeg: usize) -> Result<Report, ActionError> {
        let big_n = self.presentation.m() + self.presentation.n();
        let uq_rel = uq::relations(big_n);
        verify_module_algebra(&self.action, &uq_rel, &self.presentation.relations.all(), maxdeg)
    }

    /// `<i(xi . p), eta> = <i(p), eta xi>` for every coordinate monomial `p`
    /// of degree `<= maxdeg`, generator `xi`, and probe of length `<= L - 1`.
    pub fn verify_equivariance(&self, maxdeg: usize) -> Result<Report, ActionError> {
        let c = self.action.calculus();
        let mut r = Report::new("equivariance")
            .param("m", c.m)
            .param("n", c.n)
            .param("maxdeg", maxdeg)
            .param("L", self.pairing.max_len());
        let gens = uq::generators(c.m + c.n);
        let mut checked = 0;
        let mut witness = None;
        'outer: for d in 0..=maxdeg {
            for w in c.basis(d, 0) {
                let f = self.pairing.monomial(&w)?;
                for &xi in &gens {
                    let image = self.pairing.table(&self.action.act_gen_word(xi, &w)?)?;
                    let lhs: Vec<(usize, QRat)> = {
                        let limit = self.pairing.index().count_up_to(self.pairing.max_len() - 1);
                        image
                            .entries()
                            .into_iter()
                            .filter(|(i, _)| *i < limit)
                            .map(|(i, v)| (i, v.clone()))
                            .collect()
                    };
                    checked += 1;
                    if lhs != f.shifted(xi) {
                        witness = Some(format!("{xi} . {w}"));
                        break 'outer;
                    }
                }
            }
        }
        r.push(
            format!("embedding intertwines the action ({checked} pairs checked)"),
            witness.is_none(),
            witness,
        );
        Ok(r)
    }

    /// Polynomial-degree shift of every generator on every coordinate.
    pub fn verify_grading(&self) -> Report {
        verify_grading(self.table())
    }

    pub fn specialize(&self, q0: &BigRational, maxdeg: usize) -> Result<Report, ActionError> {
        specialize_action(&self.presentation, self.table(), q0, maxdeg)
    }
}

/// Polynomial-degree shifts `deg(xi . t) - 1`, or `None` for a zero entry
/// (compatible with any shift) and `Err` for an inhomogeneous entry.
fn shift<K: Field>(p: &NCPoly<K>) -> Result<Option<i64>, String> {
    let mut lens = p.terms().map(|(w, _)| w.len());
    let Some(first) = lens.next() else { return Ok(None) };
    if lens.any(|l| l != first) {
        return Err(format!("inhomogeneous: {p}"));
    }
    Ok(Some(first as i64 - 1))
}

pub fn verify_grading<K: Field>(table: &ActionTable<K>) -> Report {
    let m = table.m as u8;
    let mut r = Report::new("grading").param("m", table.m).param("n", table.n);
    let mut levi_bad = None;
    let mut distinguished: BTreeMap<Gen, Vec<Option<i64>>> = BTreeMap::new();
    for (xi, row) in &table.entries {
        let levi = !matches!(xi, Gen::E(i) | Gen::F(i) if *i == m);
        for (t, p) in row {
            match shift(p) {
                Err(e) => {
                    if levi_bad.is_none() {
                        levi_bad = Some(format!("{xi} . {t} {e}"));
                    }
                }
                Ok(s) if levi => {
                    if s.is_some_and(|s| s != 0) && levi_bad.is_none() {
                        levi_bad = Some(format!("{xi} . {t} = {p}"));
                    }
                }
                Ok(s) => distinguished.entry(*xi).or_default().push(s),
            }
        }
    }
    r.push(
        "Levi generators (E_i, F_i with i != m, all K_i) preserve polynomial degree",
        levi_bad.is_none(),
        levi_bad,
    );
    let mut measured = BTreeMap::new();
    for (xi, shifts) in &distinguished {
        let mut s: Vec<i64> = shifts.iter().flatten().copied().collect();
        s.sort_unstable();
        s.dedup();
        let text = match s.as_slice() {
            [] => "annihilates every coordinate".to_string(),
            [one] => format!("shift {one:+}"),
            many => format!("mixed shifts {many:?}"),
        };
        r.note(format!("measured shift of {xi}"), text);
        measured.insert(*xi, s);
    }
    let raises = measured.iter().filter(|(_, s)| s.as_slice() == [1]).count();
    let nonzero = measured.values().any(|s| s.iter().any(|&x| x != 0));
    r.push(
        format!("E_{m} or F_{m} changes polynomial degree"),
        nonzero,
        Some("both distinguished generators preserve degree".into()),
    );
    r.push(
        format!("one of E_{m}, F_{m} raises polynomial degree by exactly 1"),
        raises >= 1,
        Some(format!("{measured:?}")),
    );
    let single = |g: Gen| match measured.get(&g).map(Vec::as_slice) {
        Some([s]) => Some(*s),
        _ => None,
    };
    let induced = match (single(Gen::E(m)), single(Gen::F(m))) {
        (Some(e), Some(f)) => Some(UqGrading::new(table.m).with_e_degree(e).with_f_degree(f)),
        _ => None,
    };
    let homogeneous = induced.map(|g| {
        UqPresentation::new(table.m + table.n, table.m)
            .with_grading(g)
            .inhomogeneous_relations()
            .iter()
            .map(|r| r.name.clone())
            .collect::<Vec<_>>()
    });
    r.push(
        "U_q relations are homogeneous for the induced grading",
        homogeneous.as_ref().is_some_and(|b| b.is_empty()),
        Some(format!("{induced:?}: {homogeneous:?}")),
    );
    r
}

/// The module-algebra suite over exact rationals at `q = q0`, plus a check
/// that specialization commutes with the action.
pub fn specialize_action(
    presentation: &OmegaPresentation,
    table: &ActionTable<QRat>,
    q0: &BigRational,
    maxdeg: usize,
) -> Result<Report, ActionError> {
    if Zero::is_zero(q0) || One::is_one(&q0.abs()) {
        return Err(ActionError::Precondition(format!(
            "q0 = {q0}: q - q^-1 vanishes or q^-1 is undefined"
        )));
    }
    let (m, n) = (presentation.m(), presentation.n());
    let calc = presentation.calculus.specialize(q0)?;
    let tab = table.specialize(q0)?;
    let action = ModuleAction::new(calc, tab)?;
    let uq_rel = uq::relations(m + n)
        .iter()
        .map(|r| r.try_map(|c| c.specialize(q0)))
        .collect::<Result<Vec<_>, _>>()?;
    let omega = presentation
        .relations
        .all()
        .iter()
        .map(|p| p.specialize(q0))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = verify_module_algebra(&action, &uq_rel, &omega, maxdeg)?;
    r.suite = "module-algebra-specialized".into();
    r.set_param("q0", q0.to_string());

    let generic = ModuleAction::new(presentation.calculus.clone(), table.clone())?;
    let mut witness = None;
    'outer: for w in presentation.calculus.basis_up_to(maxdeg) {
        for xi in uq::generators(m + n) {
            let a = generic.act_gen_word(xi, &w)?.specialize(q0)?;
            let b = action.act_gen_word(xi, &w)?;
            if a != b {
                witness = Some(format!("{xi} . {w}"));
                break 'outer;
            }
        }
    }
    r.push("specialization commutes with the action", witness.is_none(), witness);
    Ok(r)
}

/// Tables derived at cutoffs `l1` and `l2` agree entry by entry.
pub fn uniqueness_probe(m: usize, n: usize, l1: usize, l2: usize) -> Result<Report, ActionError> {
    let presentation = build_calculus(m, n, 2)?;
    let mut r = Report::new("uniqueness")
        .param("m", m)
        .param("n", n)
        .param("L1", l1)
        .param("L2", l2);
    let derive = |len| derive_table(&Pairing::new(m, n, len), &presentation.calculus);
    let (t1, t2) = (derive(l1), derive(l2));
    for (len, t) in [(l1, &t1), (l2, &t2)] {
        r.push(
            format!("derivation at L = {len} is rank certified"),
            t.is_ok(),
            t.as_ref().err().map(ToString::to_string),
        );
    }
    if let (Ok(a), Ok(b)) = (&t1, &t2) {
        let diff = a
            .entries
            .iter()
            .flat_map(|(xi, row)| row.iter().map(move |(t, p)| (xi, t, p)))
            .find(|(xi, t, p)| b.entry(**xi, **t) != Some(p));
        r.push(
            "tables agree entry by entry",
            diff.is_none(),
            diff.map(|(xi, t, p)| format!("{xi} . {t}: {p} at L = {l1}")),
        );
    }
    Ok(r)
}

/// Height of the weight of `xi . t`, the shortest probe that can see it.
pub fn target_height(m: usize, n: usize, xi: Gen, t: Gen) -> usize {
    let tw = monomial_weight(m, n, &Word::letter(t));
    let mut w = tw;
    match xi {
        Gen::E(i) => w[i as usize - 1] -= 1,
        Gen::F(i) => w[i as usize - 1] += 1,
        _ => {}
    }
    height(&w)
}
