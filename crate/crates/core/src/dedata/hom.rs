use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use crate::exactla::ExactMatrix;
use crate::ncalg::{Letter, Monomial, NcPoly, ReductionSystem};
use crate::report::CertReport;

/// An algebra map `A → M_n(A)` given on generators and extended
/// multiplicatively, with products memoized per word.
pub struct MatHom {
    base: Arc<ReductionSystem>,
    n: usize,
    images: Vec<Vec<NcPoly>>,
    cache: RwLock<HashMap<Monomial, Arc<Vec<NcPoly>>>>,
}

impl MatHom {
    /// `images[g]` is the row-major `n × n` image of generator `g`.
    pub fn new(base: Arc<ReductionSystem>, n: usize, images: Vec<Vec<NcPoly>>) -> Self {
        assert_eq!(images.len(), base.alphabet().len(), "one image per generator");
        assert!(images.iter().all(|m| m.len() == n * n), "square images");
        Self {
            base,
            n,
            images,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<ReductionSystem> {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> Vec<NcPoly> {
        let one = NcPoly::one(self.base.field());
        (0..self.n * self.n)
            .map(|k| if k / self.n == k % self.n { one.clone() } else { NcPoly::zero() })
            .collect()
    }

    /// Matrix product over `A`, entries in normal form.
    pub fn multiply(&self, a: &[NcPoly], b: &[NcPoly]) -> Vec<NcPoly> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NcPoly::zero();
                for k in 0..n {
                    let (x, y) = (&a[i * n + k], &b[k * n + j]);
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &x.mul(y);
                    }
                }
                out.push(self.base.normal_form(&acc));
            }
        }
        out
    }

    /// Image of a word (the word itself is not reduced first).
    pub fn on_monomial(&self, m: &Monomial) -> Arc<Vec<NcPoly>> {
        if let Some(v) = self.cache.read().expect("hom cache").get(m) {
            return v.clone();
        }
        let alphabet = self.base.alphabet();
        let word = m.word();
        let mut k = word.len();
        let mut acc = None;
        {
            let cache = self.cache.read().expect("hom cache");
            while k > 0 {
                if let Some(v) = cache.get(&alphabet.monomial(&word[..k])) {
                    acc = Some(v.clone());
                    break;
                }
                k -= 1;
            }
        }
        let mut acc = acc.unwrap_or_else(|| Arc::new(self.identity()));
        let mut fresh = Vec::new();
        for i in k..word.len() {
            acc = Arc::new(self.multiply(&acc, &self.images[word[i] as usize]));
            fresh.push((alphabet.monomial(&word[..=i]), acc.clone()));
        }
        self.cache.write().expect("hom cache").extend(fresh);
        acc
    }

    pub fn apply(&self, p: &NcPoly) -> Vec<NcPoly> {
        let mut out = vec![NcPoly::zero(); self.n * self.n];
        for (m, c) in p.terms() {
            let img = self.on_monomial(m);
            for (o, e) in out.iter_mut().zip(img.iter()) {
                o.add_scaled(e, c);
            }
        }
        out
    }

    pub fn entry(&self, i: usize, j: usize, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.on_monomial(m)[i * self.n + j], c);
        }
        out
    }

    /// The first base relation (if any) whose image is not the zero matrix,
    /// with the offending entry.
    pub fn relation_residual(&self) -> Option<(usize, usize, usize, NcPoly)> {
        let field = self.base.field();
        for (ri, rule) in self.base.rules().iter().enumerate() {
            let img = self.apply(&rule.relation(field));
            if let Some(k) = img.iter().position(|e| !e.is_zero()) {
                return Some((ri, k / self.n, k % self.n, img[k].clone()));
            }
        }
        None
    }
}

/// A graded algebra endomorphism of `A`, stored by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMap {
    pub images: Vec<NcPoly>,
}

impl EndoMap {
    pub fn identity(base: &ReductionSystem) -> Self {
        let f = base.field();
        Self {
            images: base
                .alphabet()
                .letters()
                .map(|l| NcPoly::generator(base.alphabet(), l, f))
                .collect(),
        }
    }

    pub fn hom(&self, base: &Arc<ReductionSystem>) -> MatHom {
        MatHom::new(
            base.clone(),
            1,
            self.images.iter().map(|p| vec![p.clone()]).collect(),
        )
    }

    /// `self ∘ other` on generators.
    pub fn compose(&self, other: &EndoMap, base: &Arc<ReductionSystem>) -> EndoMap {
        let h = self.hom(base);
        EndoMap {
            images: other.images.iter().map(|p| h.entry(0, 0, p)).collect(),
        }
    }

    pub fn is_identity(&self, base: &ReductionSystem) -> bool {
        *self == EndoMap::identity(base)
    }

    /// Generator images are homogeneous of the generator's degree and every
    /// base relation is sent to zero.
    pub fn check_endomorphism(&self, base: &Arc<ReductionSystem>) -> CertReport {
        let alphabet = base.alphabet();
        let mut report = CertReport::new("endomorphism");
        for l in alphabet.letters() {
            let img = &self.images[l as usize];
            if !img.is_homogeneous_of(alphabet.degree(l)) {
                report.fail(
                    format!("generator {}", alphabet.name(l)),
                    format!("image {} is not of degree {}", img.render(alphabet), alphabet.degree(l)),
                );
            }
        }
        if let Some((ri, _, _, res)) = self.hom(base).relation_residual() {
            report.fail(
                format!("relation {}", base.rules()[ri].render(alphabet)),
                format!("image reduces to {}", res.render(alphabet)),
            );
        }
        report
    }

    pub fn render(&self, base: &ReductionSystem) -> Vec<String> {
        let alphabet = base.alphabet();
        alphabet
            .letters()
            .map(|l| {
                format!(
                    "{} -> {}",
                    alphabet.name(l),
                    self.images[l as usize].render(alphabet)
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    Inverse(EndoMap),
    /// The action on the degree-`degree` piece is singular.
    NotInvertible { degree: u32 },
    /// A candidate was found but failed its own certification; this signals
    /// that the input was not an endomorphism.
    Uncertified(String),
}

/// Inverts a graded endomorphism by solving on each generator degree.
pub fn invert_endo(e: &EndoMap, base: &Arc<ReductionSystem>) -> Inversion {
    let alphabet = base.alphabet();
    let field = base.field();
    let h = e.hom(base);
    let degrees: BTreeSet<u32> = alphabet.degrees().iter().copied().collect();
    let mut pre = vec![NcPoly::zero(); alphabet.len()];
    for d in degrees {
        let basis = base.basis(d);
        let columns: Vec<_> = basis
            .monomials
            .iter()
            .map(|m| {
                let img = h.entry(0, 0, &NcPoly::monomial(m.clone(), field.one()));
                basis.coords(&img, field).expect("image is homogeneous and reduced")
            })
            .collect();
        let mat = ExactMatrix::from_columns(field, basis.len(), &columns);
        let Some(inv) = mat.inverse() else {
            return Inversion::NotInvertible { degree: d };
        };
        for l in alphabet.letters().filter(|&l| alphabet.degree(l) == d) {
            let target = base.normal_form(&NcPoly::generator(alphabet, l, field));
            let c = basis.coords(&target, field).expect("generator is irreducible");
            let x = inv.mul_vec(&c).expect("square system");
            pre[l as usize] = basis.poly(&x);
        }
    }
    let candidate = EndoMap { images: pre };
    let check = candidate.check_endomorphism(base);
    if !check.passed() {
        return Inversion::Uncertified(format!("{:?}", check.witnesses));
    }
    let id = EndoMap::identity(base);
    let normalized = |m: EndoMap| EndoMap {
        images: m.images.iter().map(|p| base.normal_form(p)).collect(),
    };
    let id_nf = normalized(id);
    if normalized(e.compose(&candidate, base)) != id_nf
        || normalized(candidate.compose(e, base)) != id_nf
    {
        return Inversion::Uncertified("not a two-sided inverse on generators".into());
    }
    Inversion::Inverse(candidate)
}

/// Smallest `n ≤ max_n` with `e^n` the identity on generators.
pub fn endo_order(e: &EndoMap, base: &Arc<ReductionSystem>, max_n: u32) -> Option<u32> {
    let id = EndoMap::identity(base);
    let reduce = |m: &EndoMap| EndoMap {
        images: m.images.iter().map(|p| base.normal_form(p)).collect(),
    };
    let id = reduce(&id);
    let h = e.hom(base);
    let mut power = reduce(e);
    for n in 1..=max_n {
        if power == id {
            return Some(n);
        }
        power = EndoMap {
            images: power.images.iter().map(|p| h.entry(0, 0, p)).collect(),
        };
    }
    None
}

pub(crate) fn letter_poly(base: &ReductionSystem, l: Letter) -> NcPoly {
    NcPoly::generator(base.alphabet(), l, base.field())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::ncalg::Alphabet;

    fn free2() -> Arc<ReductionSystem> {
        Arc::new(ReductionSystem::free(
            Field::Rational,
            Alphabet::uniform(&["x1", "x2"]),
        ))
    }

    #[test]
    fn identity_inverts_to_identity() {
        let base = free2();
        let id = EndoMap::identity(&base);
        assert_eq!(invert_endo(&id, &base), Inversion::Inverse(id.clone()));
        assert_eq!(endo_order(&id, &base, 10), Some(1));
    }

    #[test]
    fn rank_one_map_is_not_invertible() {
        let base = free2();
        let x1 = letter_poly(&base, 0);
        let e = EndoMap {
            images: vec![x1.clone(), x1],
        };
        assert_eq!(invert_endo(&e, &base), Inversion::NotInvertible { degree: 1 });
    }

    #[test]
    fn swap_has_order_two() {
        let base = free2();
        let e = EndoMap {
            images: vec![letter_poly(&base, 1), letter_poly(&base, 0)],
        };
        assert_eq!(endo_order(&e, &base, 10), Some(2));
        assert_eq!(invert_endo(&e, &base), Inversion::Inverse(e.clone()));
    }

    #[test]
    fn matrix_hom_is_multiplicative_on_words() {
        let base = free2();
        let f = base.field();
        let x1 = letter_poly(&base, 0);
        let x2 = letter_poly(&base, 1);
        let two = f.from_i64(2);
        let h = MatHom::new(
            base.clone(),
            2,
            vec![
                vec![x1.clone(), x2.clone(), NcPoly::zero(), x1.scale(&two)],
                vec![x2.clone(), NcPoly::zero(), x1.clone(), x2.clone()],
            ],
        );
        let w = base.alphabet().monomial(&[0, 1, 0]);
        let direct = h.on_monomial(&w);
        let a = h.on_monomial(&base.alphabet().monomial(&[0]));
        let bc = h.on_monomial(&base.alphabet().monomial(&[1, 0]));
        assert_eq!(*direct, h.multiply(&a, &bc));
    }
}
