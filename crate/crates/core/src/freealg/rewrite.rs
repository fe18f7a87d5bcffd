use super::linalg::Echelon;
use super::{Gen, NCPoly, Word};
use crate::scalars::{Field, QRat, ScalarError};
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use thiserror::Error;

/// Default bound on the number of rule applications in one normal-form call.
pub const DEFAULT_GUARD: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting exceeded {0} steps; the rule set is not compatible with the monomial order")]
    GuardExceeded(usize),
    #[error("rule {lead} -> {tail} has a tail word not smaller than its lead")]
    OrderViolation { lead: String, tail: String },
    #[error("lead {inner} occurs inside lead {outer}; the system is not reduced")]
    NotReduced { inner: String, outer: String },
    #[error("relation is not homogeneous in word length: {0}")]
    Inhomogeneous(String),
    #[error("relation reduces to a nonzero constant, collapsing the algebra: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A reduction rule `lead -> tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<K> {
    pub lead: Word,
    pub tail: NCPoly<K>,
}

/// An ordered, reduced set of rewrite rules. Normal forms are memoized per
/// word.
#[derive(Debug)]
pub struct RewriteSystem<K> {
    rules: Vec<Rule<K>>,
    index: HashMap<Word, usize>,
    lead_lens: Vec<usize>,
    guard: usize,
    cache: Mutex<HashMap<Word, NCPoly<K>>>,
}

impl<K: Field> Clone for RewriteSystem<K> {
    fn clone(&self) -> Self {
        RewriteSystem {
            rules: self.rules.clone(),
            index: self.index.clone(),
            lead_lens: self.lead_lens.clone(),
            guard: self.guard,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl<K: Field> RewriteSystem<K> {
    /// Builds a system, checking order compatibility and reducedness.
    pub fn new(rules: Vec<Rule<K>>) -> Result<Self, RewriteError> {
        for r in &rules {
            if let Some((w, _)) = r.tail.leading() {
                if w >= &r.lead {
                    return Err(RewriteError::OrderViolation {
                        lead: r.lead.to_string(),
                        tail: r.tail.to_string(),
                    });
                }
            }
        }
        let index: HashMap<Word, usize> =
            rules.iter().enumerate().map(|(i, r)| (r.lead.clone(), i)).collect();
        let mut lead_lens: Vec<usize> = rules.iter().map(|r| r.lead.len()).collect();
        lead_lens.sort_unstable();
        lead_lens.dedup();
        let sys = RewriteSystem {
            rules,
            index,
            lead_lens,
            guard: DEFAULT_GUARD,
            cache: Mutex::new(HashMap::new()),
        };
        for r in &sys.rules {
            let l = r.lead.letters();
            for &len in &sys.lead_lens {
                for pos in 0..=l.len().saturating_sub(len) {
                    if len == l.len() || pos + len > l.len() {
                        continue;
                    }
                    let sub = Word::from_gens(&l[pos..pos + len]);
                    if sys.index.contains_key(&sub) {
                        return Err(RewriteError::NotReduced {
                            inner: sub.to_string(),
                            outer: r.lead.to_string(),
                        });
                    }
                }
            }
        }
        Ok(sys)
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty system is valid")
    }

    pub fn with_guard(mut self, guard: usize) -> Self {
        self.guard = guard;
        self
    }

    pub fn rules(&self) -> &[Rule<K>] {
        &self.rules
    }

    pub fn rule_for(&self, lead: &Word) -> Option<&Rule<K>> {
        self.index.get(lead).map(|&i| &self.rules[i])
    }

    /// Leftmost occurrence of a lead: `(position, length, rule index)`.
    fn find_lead(&self, w: &Word) -> Option<(usize, usize, usize)> {
        let l = w.letters();
        for pos in 0..l.len() {
            for &len in &self.lead_lens {
                if pos + len > l.len() {
                    break;
                }
                if let Some(&ri) = self.index.get(&Word::from_gens(&l[pos..pos + len])) {
                    return Some((pos, len, ri));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_lead(w).is_none()
    }

    /// True if no lead ends at the last letter (enough when the prefix is
    /// already normal).
    fn suffix_normal(&self, w: &Word) -> bool {
        let l = w.letters();
        self.lead_lens
            .iter()
            .filter(|&&len| len <= l.len())
            .all(|&len| !self.index.contains_key(&Word::from_gens(&l[l.len() - len..])))
    }

    pub fn nf_word(&self, w: &Word) -> Result<NCPoly<K>, RewriteError> {
        let mut steps = 0;
        self.nf_word_counted(w, &mut steps)
    }

    fn nf_word_counted(&self, w: &Word, steps: &mut usize) -> Result<NCPoly<K>, RewriteError> {
        if let Some(p) = self.cache.lock().unwrap().get(w) {
            return Ok(p.clone());
        }
        let result = match self.find_lead(w) {
            None => NCPoly::from_word(w.clone()),
            Some((pos, len, ri)) => {
                *steps += 1;
                if *steps > self.guard {
                    return Err(RewriteError::GuardExceeded(self.guard));
                }
                let l = w.letters();
                let mut acc = NCPoly::zero();
                for (tw, c) in self.rules[ri].tail.terms() {
                    let mut nw = Word::from_gens(&l[..pos]);
                    for &g in tw.letters() {
                        nw.push(g);
                    }
                    for &g in &l[pos + len..] {
                        nw.push(g);
                    }
                    let sub = self.nf_word_counted(&nw, steps)?;
                    acc.add_scaled(c, &sub);
                }
                acc
            }
        };
        self.cache.lock().unwrap().insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Normal form of a polynomial.
    pub fn nf(&self, p: &NCPoly<K>) -> Result<NCPoly<K>, RewriteError> {
        let mut steps = 0;
        p.try_map_words_linear(|w| self.nf_word_counted(w, &mut steps))
    }

    /// Product followed by reduction.
    pub fn mul(&self, a: &NCPoly<K>, b: &NCPoly<K>) -> Result<NCPoly<K>, RewriteError> {
        self.nf(&a.mul(b))
    }

    /// All normal words of length `len` over `gens` accepted by `keep`
    /// (`keep` must be prefix-closed), in ascending order.
    pub fn normal_words(&self, gens: &[Gen], len: usize, keep: &dyn Fn(&Word) -> bool) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for &g in gens {
                    let mut nw = w.clone();
                    nw.push(g);
                    if keep(&nw) && self.suffix_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    pub fn try_map_coeffs<L: Field, E>(
        &self,
        f: impl Fn(&K) -> Result<L, E>,
    ) -> Result<RewriteSystem<L>, E> {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(Rule {
                    lead: r.lead.clone(),
                    tail: r.tail.try_map_coeffs(&f)?,
                })
            })
            .collect::<Result<Vec<_>, E>>()?;
        let mut sys = RewriteSystem::new(rules).expect("coefficient maps preserve rule shape");
        sys.guard = self.guard;
        Ok(sys)
    }

    /// Returns a copy without the rule for `lead` (fault injection).
    pub fn without_rule(&self, lead: &Word) -> Self {
        let rules = self.rules.iter().filter(|r| &r.lead != lead).cloned().collect();
        Self::new(rules).expect("removing a rule keeps the system reduced")
    }

    /// Rules rendered as `lead -> tail`, in ascending lead order.
    pub fn render(&self) -> Vec<String> {
        let mut rs: Vec<&Rule<K>> = self.rules.iter().collect();
        rs.sort_by(|a, b| a.lead.cmp(&b.lead));
        rs.iter().map(|r| format!("{} -> {}", r.lead, r.tail)).collect()
    }
}

impl RewriteSystem<QRat> {
    pub fn specialize(&self, q0: &BigRational) -> Result<RewriteSystem<BigRational>, ScalarError> {
        self.try_map_coeffs(|c| c.specialize(q0))
    }
}

/// Row-reduces homogeneous relations, block by block in word length, into a
/// reduced rewrite system whose leads are the largest words.
pub fn derive_rules<K: Field>(relations: &[NCPoly<K>]) -> Result<RewriteSystem<K>, RewriteError> {
    let mut by_len: BTreeMap<usize, Vec<&NCPoly<K>>> = BTreeMap::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let len = r
            .homogeneous_len()
            .ok_or_else(|| RewriteError::Inhomogeneous(r.to_string()))?;
        by_len.entry(len).or_default().push(r);
    }
    let mut rules: Vec<Rule<K>> = Vec::new();
    for (len, block) in by_len {
        if len == 0 {
            return Err(RewriteError::Degenerate(block[0].to_string()));
        }
        let current = RewriteSystem::new(rules.clone())?;
        let reduced: Vec<NCPoly<K>> = block
            .iter()
            .map(|r| current.nf(r))
            .collect::<Result<_, _>>()?;
        // columns: largest word first, so the pivot is the leading word
        let mut words: Vec<Word> = reduced
            .iter()
            .flat_map(|r| r.terms().map(|(w, _)| w.clone()))
            .collect();
        words.sort_by(|a, b| b.cmp(a));
        words.dedup();
        let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut ech = Echelon::new();
        for r in &reduced {
            ech.insert(r.terms().map(|(w, c)| (col[w], c.clone())).collect());
        }
        for (pc, row) in ech.into_rref() {
            let lead = words[pc].clone();
            let tail = NCPoly::from_terms(row[1..].iter().map(|(c, v)| (words[*c].clone(), v.neg())));
            rules.push(Rule { lead, tail });
        }
    }
    RewriteSystem::new(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Gen {
        Gen::T { a: 2, alpha: 1 }
    }
    fn y() -> Gen {
        Gen::T { a: 1, alpha: 1 }
    }
    fn w(gs: &[Gen]) -> Word {
        Word::from_gens(gs)
    }

    fn quantum_plane() -> NCPoly<QRat> {
        NCPoly::from_word(w(&[x(), y()])).sub(&NCPoly::term(QRat::q(), w(&[y(), x()])))
    }

    #[test]
    fn quantum_plane_rule() {
        let sys = derive_rules(&[quantum_plane()]).unwrap();
        assert_eq!(sys.rules().len(), 1);
        assert_eq!(sys.rules()[0].lead, w(&[x(), y()]));
        assert_eq!(sys.rules()[0].tail, NCPoly::term(QRat::q(), w(&[y(), x()])));
    }

    #[test]
    fn two_step_rewrite() {
        let sys = derive_rules(&[quantum_plane()]).unwrap();
        let p = NCPoly::from_word(w(&[x(), y(), y()]));
        assert_eq!(
            sys.nf(&p).unwrap(),
            NCPoly::term(QRat::q_pow(2), w(&[y(), y(), x()]))
        );
        assert!(sys.nf(&NCPoly::zero()).unwrap().is_zero());
        let normal = NCPoly::from_word(w(&[y(), x(), x()]));
        assert_eq!(sys.nf(&normal).unwrap(), normal);
    }

    #[test]
    fn rejects_order_violation_and_unreduced() {
        let bad = Rule {
            lead: w(&[y(), x()]),
            tail: NCPoly::<QRat>::from_word(w(&[x(), y()])),
        };
        assert!(matches!(
            RewriteSystem::new(vec![bad]),
            Err(RewriteError::OrderViolation { .. })
        ));
        let r1 = Rule {
            lead: w(&[x(), x()]),
            tail: NCPoly::<QRat>::zero(),
        };
        let r2 = Rule {
            lead: w(&[x(), x(), y()]),
            tail: NCPoly::zero(),
        };
        assert!(matches!(
            RewriteSystem::new(vec![r1, r2]),
            Err(RewriteError::NotReduced { .. })
        ));
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let r = NCPoly::<QRat>::from_word(w(&[x(), y()])).sub(&NCPoly::gen(x()));
        assert!(matches!(derive_rules(&[r]), Err(RewriteError::Inhomogeneous(_))));
    }

    #[test]
    fn guard_trips() {
        let sys = derive_rules(&[quantum_plane()]).unwrap().with_guard(2);
        let p = NCPoly::<QRat>::from_word(w(&[x(), x(), x(), y(), y()]));
        assert!(matches!(sys.nf(&p), Err(RewriteError::GuardExceeded(2))));
    }

    #[test]
    fn normal_word_enumeration() {
        let sys = derive_rules(&[quantum_plane()]).unwrap();
        for d in 0..5 {
            let n = sys.normal_words(&[y(), x()], d, &|_| true).len();
            assert_eq!(n, d + 1);
        }
    }
}
