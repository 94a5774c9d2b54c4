use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::exactla::{Field, Scalar};

use super::{AlgebraError, Alphabet, Letter, Monomial, NcPoly};

/// Oriented rewrite rule `lead → rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Monomial,
    pub rhs: NcPoly,
}

impl Rule {
    /// The relation `lead − rhs` that the rule encodes.
    pub fn relation(&self, field: Field) -> NcPoly {
        let lead = NcPoly::monomial(self.lead.clone(), field.one());
        &lead - &self.rhs
    }

    /// Orients a nonzero relation by its largest monomial.
    pub fn orient(relation: &NcPoly) -> Option<Rule> {
        let (lead, c) = relation.leading()?;
        let inv = c.inv().expect("nonzero coefficient");
        let mut rhs = NcPoly::zero();
        for (m, a) in relation.terms() {
            if m != lead {
                rhs.add_term(m.clone(), -(a * &inv));
            }
        }
        Some(Rule {
            lead: lead.clone(),
            rhs,
        })
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!("{} -> {}", alphabet.render(&self.lead), self.rhs.render(alphabet))
    }
}

/// Graded monomials of one degree that are irreducible, in descending order.
#[derive(Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial already in normal form.
    pub fn coords(&self, p: &NcPoly, field: Field) -> Result<Vec<Scalar>, AlgebraError> {
        let mut v = vec![field.zero(); self.len()];
        for (m, c) in p.terms() {
            let i = self.position(m).ok_or_else(|| {
                AlgebraError::NotInBasis(format!(
                    "monomial of degree {} is not an irreducible word of degree {}",
                    m.degree(),
                    self.degree
                ))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn poly(&self, coords: &[Scalar]) -> NcPoly {
        NcPoly::from_terms(
            self.monomials
                .iter()
                .zip(coords)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

/// A homogeneous, inter-reduced rewriting system over a graded alphabet.
///
/// Normal forms are memoized per monomial; the caches sit behind locks so a
/// shared system can be queried from several threads.
pub struct ReductionSystem {
    field: Field,
    alphabet: Alphabet,
    rules: Vec<Rule>,
    lead_index: HashMap<Vec<Letter>, usize>,
    lead_lengths: Vec<usize>,
    nf_cache: RwLock<HashMap<Monomial, Arc<NcPoly>>>,
    basis_cache: RwLock<HashMap<u32, Arc<DegreeBasis>>>,
}

impl Clone for ReductionSystem {
    fn clone(&self) -> Self {
        Self::assemble(self.field, self.alphabet.clone(), self.rules.clone())
    }
}

impl fmt::Debug for ReductionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionSystem")
            .field("field", &self.field)
            .field("alphabet", &self.alphabet)
            .field("rules", &self.rules)
            .finish()
    }
}

impl PartialEq for ReductionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.alphabet == other.alphabet && self.rules == other.rules
    }
}

impl ReductionSystem {
    fn assemble(field: Field, alphabet: Alphabet, rules: Vec<Rule>) -> Self {
        let lead_index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.word().to_vec(), i))
            .collect();
        let mut lead_lengths: Vec<usize> = rules.iter().map(|r| r.lead.len()).collect();
        lead_lengths.sort_unstable();
        lead_lengths.dedup();
        Self {
            field,
            alphabet,
            rules,
            lead_index,
            lead_lengths,
            nf_cache: RwLock::new(HashMap::new()),
            basis_cache: RwLock::new(HashMap::new()),
        }
    }

    /// The free algebra on `alphabet`.
    pub fn free(field: Field, alphabet: Alphabet) -> Self {
        Self::assemble(field, alphabet, Vec::new())
    }

    /// Accepts rules as given after checking every invariant: alphabet and
    /// field membership, `rhs < lead`, homogeneity, and inter-reducedness.
    pub fn from_rules(
        field: Field,
        alphabet: Alphabet,
        rules: Vec<Rule>,
    ) -> Result<Self, AlgebraError> {
        for r in &rules {
            alphabet.check(&r.lead)?;
            r.rhs.check_alphabet(&alphabet)?;
            r.rhs.check_field(field)?;
            if r.lead.is_one() {
                return Err(AlgebraError::ConstantRelation);
            }
            if let Some(m) = r.rhs.monomials().find(|m| *m >= &r.lead) {
                return Err(AlgebraError::RuleOrder(format!(
                    "{} is not smaller than the lead {}",
                    alphabet.render(m),
                    alphabet.render(&r.lead)
                )));
            }
            if !r.rhs.is_homogeneous_of(r.lead.degree()) {
                return Err(AlgebraError::NonHomogeneous(r.render(&alphabet)));
            }
        }
        for (i, a) in rules.iter().enumerate() {
            for (j, b) in rules.iter().enumerate() {
                if i != j && a.lead.contains(&b.lead) {
                    return Err(AlgebraError::NotInterreduced(
                        alphabet.render(&a.lead),
                        alphabet.render(&b.lead),
                    ));
                }
            }
        }
        Ok(Self::assemble(field, alphabet, rules))
    }

    /// Orients homogeneous relations by their largest monomial and
    /// inter-reduces them. No completion is attempted: the result only
    /// rewrites with the given relations (and their reductions).
    pub fn from_relations(
        field: Field,
        alphabet: Alphabet,
        relations: Vec<NcPoly>,
    ) -> Result<Self, AlgebraError> {
        for r in &relations {
            r.check_alphabet(&alphabet)?;
            r.check_field(field)?;
            if r.is_zero() {
                continue;
            }
            match r.homogeneous_degree() {
                None => return Err(AlgebraError::NonHomogeneous(r.render(&alphabet))),
                Some(0) => return Err(AlgebraError::ConstantRelation),
                Some(_) => {}
            }
        }
        let mut pending: Vec<NcPoly> = relations.into_iter().rev().collect();
        let mut rules: Vec<Rule> = Vec::new();
        while let Some(f) = pending.pop() {
            let g = Self::assemble(field, alphabet.clone(), rules.clone()).normal_form(&f);
            let Some(rule) = Rule::orient(&g) else {
                continue;
            };
            let (evicted, kept): (Vec<Rule>, Vec<Rule>) = rules
                .into_iter()
                .partition(|r| r.lead.contains(&rule.lead));
            rules = kept;
            rules.push(rule);
            pending.extend(evicted.iter().map(|r| r.relation(field)));
        }
        let interim = Self::assemble(field, alphabet.clone(), rules.clone());
        for r in &mut rules {
            r.rhs = interim.normal_form(&r.rhs);
        }
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        Self::from_rules(field, alphabet, rules)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn max_rule_degree(&self) -> u32 {
        self.rules.iter().map(|r| r.lead.degree()).max().unwrap_or(0)
    }

    pub fn rule_for_lead(&self, word: &[Letter]) -> Option<usize> {
        self.lead_index.get(word).copied()
    }

    /// Leftmost occurrence of a rule lead: `(rule index, start position)`.
    pub fn find_redex(&self, m: &Monomial) -> Option<(usize, usize)> {
        let w = m.word();
        for start in 0..w.len() {
            for &len in &self.lead_lengths {
                if start + len > w.len() {
                    break;
                }
                if let Some(&r) = self.lead_index.get(&w[start..start + len]) {
                    return Some((r, start));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, m: &Monomial) -> bool {
        self.find_redex(m).is_none()
    }

    /// Result of rewriting the redex of rule `rule` at `start` once.
    pub fn rewrite_at(&self, m: &Monomial, rule: usize, start: usize) -> NcPoly {
        let r = &self.rules[rule];
        let (u, rest) = m.split_at(start, &self.alphabet);
        let (_, v) = rest.split_at(r.lead.len(), &self.alphabet);
        let mut out = NcPoly::zero();
        for (t, c) in r.rhs.terms() {
            out.add_term(t.surround(&u, &v), c.clone());
        }
        out
    }

    fn cached(&self, m: &Monomial) -> Option<Arc<NcPoly>> {
        self.nf_cache.read().expect("nf cache").get(m).cloned()
    }

    /// Normal form of a single monomial.
    ///
    /// Each monomial is rewritten at its leftmost redex and the normal forms
    /// of the resulting (strictly smaller) monomials are combined. Work is
    /// driven by an explicit stack, so long chains cannot overflow.
    pub fn nf_monomial(&self, m: &Monomial) -> Arc<NcPoly> {
        if let Some(p) = self.cached(m) {
            return p;
        }
        let mut local: HashMap<Monomial, Arc<NcPoly>> = HashMap::new();
        let mut stack = vec![m.clone()];
        while let Some(top) = stack.last().cloned() {
            if local.contains_key(&top) {
                stack.pop();
                continue;
            }
            if let Some(p) = self.cached(&top) {
                local.insert(top, p);
                stack.pop();
                continue;
            }
            let Some((rule, start)) = self.find_redex(&top) else {
                let p = NcPoly::monomial(top.clone(), self.field.one());
                local.insert(top, Arc::new(p));
                stack.pop();
                continue;
            };
            let step = self.rewrite_at(&top, rule, start);
            let missing: Vec<Monomial> = step
                .monomials()
                .filter(|t| !local.contains_key(*t) && self.cached(t).is_none())
                .cloned()
                .collect();
            if missing.is_empty() {
                let mut nf = NcPoly::zero();
                for (t, c) in step.terms() {
                    let sub = local.get(t).cloned().or_else(|| self.cached(t));
                    nf.add_scaled(&sub.expect("resolved"), c);
                }
                local.insert(top, Arc::new(nf));
                stack.pop();
            } else {
                stack.extend(missing);
            }
        }
        let result = local.get(m).cloned().expect("root resolved");
        self.nf_cache.write().expect("nf cache").extend(local);
        result
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.nf_monomial(m), c);
        }
        out
    }

    /// `NF(p · q)`.
    pub fn mul_nf(&self, p: &NcPoly, q: &NcPoly) -> NcPoly {
        self.normal_form(&p.mul(q))
    }

    /// Irreducible monomials of weighted degree `degree`, descending.
    pub fn irreducible_monomials(&self, degree: u32) -> Vec<Monomial> {
        self.basis(degree).monomials.clone()
    }

    /// Cached basis of the degree-`degree` piece (valid as a basis once
    /// confluence holds up to that degree).
    pub fn basis(&self, degree: u32) -> Arc<DegreeBasis> {
        if let Some(b) = self.basis_cache.read().expect("basis cache").get(&degree) {
            return b.clone();
        }
        let mut found = Vec::new();
        let mut word = Vec::new();
        self.enumerate(&mut word, degree, &mut found);
        let mut monomials: Vec<Monomial> =
            found.iter().map(|w| self.alphabet.monomial(w)).collect();
        monomials.sort_unstable_by(|a, b| b.cmp(a));
        let basis = Arc::new(DegreeBasis::new(degree, monomials));
        self.basis_cache
            .write()
            .expect("basis cache")
            .entry(degree)
            .or_insert(basis)
            .clone()
    }

    fn enumerate(&self, word: &mut Vec<Letter>, remaining: u32, out: &mut Vec<Vec<Letter>>) {
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for l in self.alphabet.letters() {
            let d = self.alphabet.degree(l);
            if d > remaining {
                continue;
            }
            word.push(l);
            let n = word.len();
            let reducible = self
                .lead_lengths
                .iter()
                .any(|&len| len <= n && self.lead_index.contains_key(&word[n - len..]));
            if !reducible {
                self.enumerate(word, remaining - d, out);
            }
            word.pop();
        }
    }

    /// Degree-wise dimensions `[dim_0, …, dim_max]`.
    pub fn hilbert_function(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree).map(|d| self.basis(d).len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quantum_plane() -> ReductionSystem {
        let a = Alphabet::uniform(&["x1", "x2"]);
        let f = Field::Rational;
        let rel = &NcPoly::word(&a, &[1, 0], f) + &NcPoly::word(&a, &[0, 1], f);
        ReductionSystem::from_relations(f, a, vec![rel]).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let rs = quantum_plane();
        let a = rs.alphabet().clone();
        let f = rs.field();
        assert_eq!(rs.rules().len(), 1);
        assert_eq!(rs.rules()[0].render(&a), "x2*x1 -> -x1*x2");
        let nf = rs.normal_form(&NcPoly::word(&a, &[1, 0], f));
        assert_eq!(nf.render(&a), "-x1*x2");
        let nf = rs.normal_form(&NcPoly::word(&a, &[1, 0, 0], f));
        assert_eq!(nf.render(&a), "x1*x1*x2");
        let x1 = NcPoly::word(&a, &[0], f);
        assert_eq!(rs.normal_form(&x1), x1);
    }

    #[test]
    fn irreducible_words_of_the_quantum_plane() {
        let rs = quantum_plane();
        let a = rs.alphabet().clone();
        let words: Vec<String> = rs
            .irreducible_monomials(2)
            .iter()
            .map(|m| a.render(m))
            .collect();
        assert_eq!(words, vec!["x2*x2", "x1*x2", "x1*x1"]);
        assert_eq!(rs.irreducible_monomials(0), vec![Monomial::one()]);
        assert_eq!(rs.hilbert_function(3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn commutative_plane_counts() {
        let a = Alphabet::uniform(&["y1", "y2"]);
        let f = Field::Rational;
        let rel = &NcPoly::word(&a, &[1, 0], f) - &NcPoly::word(&a, &[0, 1], f);
        let rs = ReductionSystem::from_relations(f, a, vec![rel]).unwrap();
        assert_eq!(rs.hilbert_function(2), vec![1, 2, 3]);
    }

    #[test]
    fn autoreduction_removes_redundancy() {
        let a = Alphabet::uniform(&["x", "y"]);
        let f = Field::Rational;
        let yx = NcPoly::word(&a, &[1, 0], f);
        let xy = NcPoly::word(&a, &[0, 1], f);
        let yxx = NcPoly::word(&a, &[1, 0, 0], f);
        let xxy = NcPoly::word(&a, &[0, 0, 1], f);
        // the cubic relation is implied by the quadratic one
        let rs =
            ReductionSystem::from_relations(f, a, vec![&yxx - &xxy, &yx - &xy]).unwrap();
        assert_eq!(rs.rules().len(), 1);
    }

    #[test]
    fn rejects_bad_rules() {
        let a = Alphabet::uniform(&["x", "y"]);
        let f = Field::Rational;
        let bad = Rule {
            lead: a.monomial(&[0, 1]),
            rhs: NcPoly::word(&a, &[1, 0], f),
        };
        assert!(matches!(
            ReductionSystem::from_rules(f, a.clone(), vec![bad]),
            Err(AlgebraError::RuleOrder(_))
        ));
        let inhom = &NcPoly::word(&a, &[1, 0], f) - &NcPoly::word(&a, &[0], f);
        assert!(matches!(
            ReductionSystem::from_relations(f, a.clone(), vec![inhom]),
            Err(AlgebraError::NonHomogeneous(_))
        ));
        let nested = vec![
            Rule {
                lead: a.monomial(&[1, 0]),
                rhs: NcPoly::zero(),
            },
            Rule {
                lead: a.monomial(&[1, 0, 0]),
                rhs: NcPoly::zero(),
            },
        ];
        assert!(matches!(
            ReductionSystem::from_rules(f, a, nested),
            Err(AlgebraError::NotInterreduced(_, _))
        ));
    }

    #[test]
    fn long_chains_do_not_recurse() {
        // rewriting x_{i+1} x_i down a long word exercises the explicit stack
        let rs = quantum_plane();
        let a = rs.alphabet().clone();
        let mut w = vec![1u16; 12];
        w.extend(vec![0u16; 12]);
        let nf = rs.nf_monomial(&a.monomial(&w));
        let mut sorted = vec![0u16; 12];
        sorted.extend(vec![1u16; 12]);
        // 144 transpositions, each contributing a sign of -1
        assert_eq!(nf.len(), 1);
        assert_eq!(nf.leading().unwrap().0, &a.monomial(&sorted));
        assert!(nf.leading().unwrap().1.is_one());
    }
}
