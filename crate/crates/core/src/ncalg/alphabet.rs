use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write;

use super::AlgebraError;

pub type Letter = u16;

/// Graded generator alphabet. List order is the letter order of the
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, degrees: Vec<u32>) -> Result<Self, AlgebraError> {
        if names.len() != degrees.len() {
            return Err(AlgebraError::Shape(format!(
                "{} names but {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        if names.len() > Letter::MAX as usize {
            return Err(AlgebraError::Shape("alphabet too large".into()));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(AlgebraError::DuplicateGenerator(n.clone()));
            }
            if degrees[i] == 0 {
                return Err(AlgebraError::ZeroDegree(n.clone()));
            }
        }
        Ok(Self { names, degrees })
    }

    /// All generators of degree 1, named as given.
    pub fn uniform(names: &[&str]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
        )
        .expect("valid uniform alphabet")
    }

    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            degrees: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn degree(&self, l: Letter) -> u32 {
        self.degrees[l as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| i as Letter)
    }

    /// Alphabet with extra letters appended after the existing ones.
    pub fn extended(&self, names: &[&str], degrees: &[u32]) -> Result<Self, AlgebraError> {
        let mut n = self.names.clone();
        n.extend(names.iter().map(|s| s.to_string()));
        let mut d = self.degrees.clone();
        d.extend_from_slice(degrees);
        Self::new(n, d)
    }

    pub fn monomial(&self, word: &[Letter]) -> Monomial {
        let degree = word.iter().map(|&l| self.degree(l)).sum();
        Monomial {
            degree,
            word: word.to_vec(),
        }
    }

    pub fn generator(&self, l: Letter) -> Monomial {
        self.monomial(&[l])
    }

    pub fn check(&self, m: &Monomial) -> Result<(), AlgebraError> {
        match m.word.iter().find(|&&l| l as usize >= self.len()) {
            Some(&l) => Err(AlgebraError::AlphabetMismatch(format!(
                "letter index {l} outside an alphabet of {} letters",
                self.len()
            ))),
            None if self.monomial(&m.word).degree != m.degree => Err(
                AlgebraError::AlphabetMismatch("monomial degree does not match alphabet".into()),
            ),
            None => Ok(()),
        }
    }

    /// Weighted-degree lexicographic comparison, letters compared left to right.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.cmp(b))
    }

    pub fn render(&self, m: &Monomial) -> String {
        if m.word.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, &l) in m.word.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            let _ = write!(out, "{}", self.name(l));
        }
        out
    }
}

/// A word in the alphabet with its cached weighted degree.
///
/// The derived ordering compares degree first and then the words
/// lexicographically, which is exactly the deglex monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    word: Vec<Letter>,
}

impl Monomial {
    pub fn one() -> Self {
        Self {
            degree: 0,
            word: Vec::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Monomial {
            degree: self.degree + other.degree,
            word,
        }
    }

    /// `prefix · self · suffix`.
    pub fn surround(&self, prefix: &Monomial, suffix: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(prefix.len() + self.len() + suffix.len());
        word.extend_from_slice(&prefix.word);
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&suffix.word);
        Monomial {
            degree: prefix.degree + self.degree + suffix.degree,
            word,
        }
    }

    /// Position of the first occurrence of `needle` as a subword.
    pub fn find(&self, needle: &Monomial) -> Option<usize> {
        if needle.len() > self.len() {
            return None;
        }
        if needle.is_one() {
            return Some(0);
        }
        self.word
            .windows(needle.len())
            .position(|w| w == needle.word.as_slice())
    }

    pub fn contains(&self, needle: &Monomial) -> bool {
        self.find(needle).is_some()
    }

    /// Splits into `(word[..at], word[at..])`.
    pub fn split_at(&self, at: usize, alphabet: &Alphabet) -> (Monomial, Monomial) {
        (
            alphabet.monomial(&self.word[..at]),
            alphabet.monomial(&self.word[at..]),
        )
    }

    pub fn reversed(&self) -> Monomial {
        let mut word = self.word.clone();
        word.reverse();
        Monomial {
            degree: self.degree,
            word,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::uniform(&["x1", "x2", "y1", "y2"])
    }

    #[test]
    fn deglex_ground_truths() {
        let a = ab();
        let (x1, x2, y1, y2) = (0, 1, 2, 3);
        let m = |w: &[Letter]| a.monomial(w);
        assert_eq!(a.compare(&m(&[x1]), &m(&[x1, x2])).unwrap(), Ordering::Less);
        assert_eq!(
            a.compare(&m(&[y2, y1]), &m(&[y1, y2])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            a.compare(&m(&[x2, x1]), &m(&[x1, x2])).unwrap(),
            Ordering::Greater
        );
        // y_i x_j beats x_k y_l at equal degree
        for i in [y1, y2] {
            for j in [x1, x2] {
                for k in [x1, x2] {
                    for l in [y1, y2] {
                        assert!(m(&[i, j]) > m(&[k, l]));
                    }
                }
            }
        }
    }

    #[test]
    fn weighted_degrees_come_first() {
        let a = Alphabet::new(vec!["a".into(), "b".into()], vec![1, 3]).unwrap();
        assert!(a.monomial(&[0, 0, 0]) < a.monomial(&[1]));
        assert!(a.monomial(&[1]) < a.monomial(&[0, 0, 0, 0]));
        assert_eq!(a.monomial(&[0, 1]).degree(), 4);
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let small = Alphabet::uniform(&["x"]);
        let big = ab();
        let m = big.monomial(&[3]);
        assert!(matches!(
            small.compare(&m, &Monomial::one()),
            Err(AlgebraError::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(vec!["x".into(), "x".into()], vec![1, 1]).is_err());
        assert!(Alphabet::new(vec!["x".into()], vec![0]).is_err());
    }

    #[test]
    fn subword_search() {
        let a = ab();
        let w = a.monomial(&[3, 2, 0]);
        assert_eq!(w.find(&a.monomial(&[2, 0])), Some(1));
        assert!(!w.contains(&a.monomial(&[0, 2])));
        assert_eq!(a.render(&w), "y2*y1*x1");
        assert_eq!(a.render(&Monomial::one()), "1");
    }
}
