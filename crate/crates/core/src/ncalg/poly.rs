use std::collections::BTreeMap;
use std::fmt::Write;
use std::ops::{Add, Neg, Sub};

use crate::exactla::{Field, Scalar};

use super::{AlgebraError, Alphabet, Letter, Monomial};

/// Finite linear combination of monomials. Zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn generator(alphabet: &Alphabet, l: Letter, field: Field) -> Self {
        Self::monomial(alphabet.generator(l), field.one())
    }

    pub fn word(alphabet: &Alphabet, word: &[Letter], field: Field) -> Self {
        Self::monomial(alphabet.monomial(word), field.one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
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
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// `Some(d)` iff the polynomial is nonzero and every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    /// True when every term has degree `d`; the zero polynomial qualifies.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Free-algebra product (concatenation, extended bilinearly).
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    /// Checks that every monomial is a word over `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<(), AlgebraError> {
        self.terms.keys().try_for_each(|m| alphabet.check(m))
    }

    /// Checks that every coefficient lies in `field`.
    pub fn check_field(&self, field: Field) -> Result<(), AlgebraError> {
        match self.terms.values().find(|c| c.field() != field) {
            Some(c) => Err(AlgebraError::FieldMismatch(format!(
                "coefficient {c} is not in {field}"
            ))),
            None => Ok(()),
        }
    }

    /// Applies the letter substitution `letter i ↦ images[i]` in the free
    /// algebra. With `reverse`, products are taken in reversed order, which
    /// is how anti-homomorphisms act.
    pub fn substitute(&self, images: &[NcPoly], field: Field, reverse: bool) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = NcPoly::one(field);
            for &l in m.word() {
                let img = &images[l as usize];
                acc = if reverse { img.mul(&acc) } else { acc.mul(img) };
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Canonical rendering: terms in descending order, letters joined by `*`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                let _ = write!(out, "{mag}");
            } else if mag.is_one() {
                out.push_str(&alphabet.render(m));
            } else {
                let _ = write!(out, "{mag}*{}", alphabet.render(m));
            }
        }
        out
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
