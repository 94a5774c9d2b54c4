//! DE-data `{P, σ, δ, τ}` over a presented base algebra and its validators.

mod checks;
mod det;
mod hom;
mod normalize;
mod phi;

pub use det::{DetSigma, NaiveVariant};
pub use hom::{endo_order, invert_endo, EndoMap, Inversion, MatHom};
pub use normalize::Normalization;
pub use phi::{PhiMap, PhiOutcome};

use std::sync::Arc;

use thiserror::Error;

use crate::exactla::{Field, Scalar};
use crate::ncalg::{AlgebraError, Alphabet, NcPoly, ReductionSystem, Rule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("non-homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("base generator `{0}` is the lead of a base rule; drop it from the presentation")]
    ReducibleGenerator(String),
    #[error("base generator name `{0}` clashes with an extension variable")]
    NameClash(String),
    #[error("endomorphism violation: {0}")]
    EndomorphismViolation(String),
}

pub type SigmaImage = [[NcPoly; 2]; 2];
pub type DeltaImage = [NcPoly; 2];

/// The data `{P, σ, δ, τ}` plus the degrees of `y1, y2`.
///
/// σ and δ are stored on base generators only; all entries are kept in
/// normal form with respect to the base.
#[derive(Clone, Debug, PartialEq)]
pub struct DEData {
    base: Arc<ReductionSystem>,
    p12: Scalar,
    p11: Scalar,
    sigma: Vec<SigmaImage>,
    delta: Vec<DeltaImage>,
    tau: [NcPoly; 3],
    dy: [u32; 2],
}

pub const Y_NAMES: [&str; 2] = ["y1", "y2"];

impl DEData {
    /// Validates shapes, fields and degrees, and reduces every entry.
    ///
    /// `tau` is `[τ1, τ2, τ0]`, the coefficients of `y1`, `y2` and `1` in
    /// the tail of the `y2·y1` relation.
    pub fn new(
        base: Arc<ReductionSystem>,
        p12: Scalar,
        p11: Scalar,
        sigma: Vec<SigmaImage>,
        delta: Vec<DeltaImage>,
        tau: [NcPoly; 3],
        dy: [u32; 2],
    ) -> Result<Self, DataError> {
        let alphabet = base.alphabet().clone();
        let field = base.field();
        let n = alphabet.len();
        if sigma.len() != n || delta.len() != n {
            return Err(DataError::Shape(format!(
                "{n} base generators but {} sigma and {} delta images",
                sigma.len(),
                delta.len()
            )));
        }
        if dy.contains(&0) {
            return Err(DataError::Shape("y1 and y2 need positive degrees".into()));
        }
        for s in [&p12, &p11] {
            if s.field() != field {
                return Err(DataError::FieldMismatch(format!("parameter {s} is not in {field}")));
            }
        }
        for name in alphabet.names() {
            if Y_NAMES.contains(&name.as_str()) {
                return Err(DataError::NameClash(name.clone()));
            }
        }
        for rule in base.rules() {
            if rule.lead.len() == 1 {
                return Err(DataError::ReducibleGenerator(alphabet.render(&rule.lead)));
            }
        }
        let nf = |p: &NcPoly, what: String, degree: i64| -> Result<NcPoly, DataError> {
            p.check_alphabet(&alphabet)?;
            p.check_field(field)
                .map_err(|e| DataError::FieldMismatch(e.to_string()))?;
            let q = base.normal_form(p);
            let ok = if degree < 0 {
                q.is_zero()
            } else {
                q.is_homogeneous_of(degree as u32)
            };
            if !ok {
                return Err(DataError::NonHomogeneous(format!(
                    "{what} = {} must be homogeneous of degree {degree}",
                    q.render(&alphabet)
                )));
            }
            Ok(q)
        };
        let dyi = |i: usize| dy[i] as i64;
        let mut s_out = Vec::with_capacity(n);
        let mut d_out = Vec::with_capacity(n);
        for l in alphabet.letters() {
            let g = l as usize;
            let dx = alphabet.degree(l) as i64;
            let name = alphabet.name(l);
            let mut s: SigmaImage = Default::default();
            let mut d: DeltaImage = Default::default();
            for i in 0..2 {
                for j in 0..2 {
                    s[i][j] = nf(
                        &sigma[g][i][j],
                        format!("sigma({name})[{}][{}]", i + 1, j + 1),
                        dx + dyi(i) - dyi(j),
                    )?;
                }
                d[i] = nf(&delta[g][i], format!("delta({name})[{}]", i + 1), dx + dyi(i))?;
            }
            s_out.push(s);
            d_out.push(d);
        }
        let tau = [
            nf(&tau[0], "tau1".into(), dyi(1))?,
            nf(&tau[1], "tau2".into(), dyi(0))?,
            nf(&tau[2], "tau0".into(), dyi(0) + dyi(1))?,
        ];
        if !p11.is_zero() && dy[0] != dy[1] {
            return Err(DataError::NonHomogeneous(
                "p11 != 0 needs deg y1 = deg y2".into(),
            ));
        }
        Ok(Self {
            base,
            p12,
            p11,
            sigma: s_out,
            delta: d_out,
            tau,
            dy,
        })
    }

    pub fn base(&self) -> &Arc<ReductionSystem> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.base.alphabet()
    }

    pub fn p12(&self) -> &Scalar {
        &self.p12
    }

    pub fn p11(&self) -> &Scalar {
        &self.p11
    }

    pub fn sigma(&self) -> &[SigmaImage] {
        &self.sigma
    }

    pub fn delta(&self) -> &[DeltaImage] {
        &self.delta
    }

    pub fn tau(&self) -> &[NcPoly; 3] {
        &self.tau
    }

    pub fn dy(&self) -> [u32; 2] {
        self.dy
    }

    pub fn is_trimmed(&self) -> bool {
        self.delta.iter().all(|d| d.iter().all(NcPoly::is_zero))
            && self.tau.iter().all(NcPoly::is_zero)
    }

    /// Rebuilds with one σ entry replaced (generator `g`, row `i`, column `j`,
    /// zero-based).
    pub fn with_sigma_entry(
        &self,
        g: usize,
        i: usize,
        j: usize,
        value: NcPoly,
    ) -> Result<Self, DataError> {
        let mut sigma = self.sigma.clone();
        sigma[g][i][j] = value;
        Self::new(
            self.base.clone(),
            self.p12.clone(),
            self.p11.clone(),
            sigma,
            self.delta.clone(),
            self.tau.clone(),
            self.dy,
        )
    }

    pub fn with_parameters(&self, p12: Scalar, p11: Scalar) -> Result<Self, DataError> {
        Self::new(
            self.base.clone(),
            p12,
            p11,
            self.sigma.clone(),
            self.delta.clone(),
            self.tau.clone(),
            self.dy,
        )
    }

    pub fn with_delta_tau(&self, delta: Vec<DeltaImage>, tau: [NcPoly; 3]) -> Result<Self, DataError> {
        Self::new(
            self.base.clone(),
            self.p12.clone(),
            self.p11.clone(),
            self.sigma.clone(),
            delta,
            tau,
            self.dy,
        )
    }

    /// Same P and σ with δ and τ set to zero.
    pub fn trimmed(&self) -> Self {
        Self {
            delta: vec![Default::default(); self.delta.len()],
            tau: Default::default(),
            ..self.clone()
        }
    }

    /// σ as a map `A → M_2(A)`.
    pub fn sigma_hom(&self) -> MatHom {
        MatHom::new(
            self.base.clone(),
            2,
            self.sigma
                .iter()
                .map(|s| vec![s[0][0].clone(), s[0][1].clone(), s[1][0].clone(), s[1][1].clone()])
                .collect(),
        )
    }

    /// The 3×3 map with rows `(r,0,0)`, `(δ1,σ11,σ12)`, `(δ2,σ21,σ22)`.
    pub fn sigma_hat_hom(&self) -> MatHom {
        let alphabet = self.alphabet();
        let z = NcPoly::zero;
        MatHom::new(
            self.base.clone(),
            3,
            alphabet
                .letters()
                .map(|l| {
                    let (s, d) = (&self.sigma[l as usize], &self.delta[l as usize]);
                    vec![
                        NcPoly::generator(alphabet, l, self.field()),
                        z(),
                        z(),
                        d[0].clone(),
                        s[0][0].clone(),
                        s[0][1].clone(),
                        d[1].clone(),
                        s[1][0].clone(),
                        s[1][1].clone(),
                    ]
                })
                .collect(),
        )
    }

    pub fn extend_sigma(&self, p: &NcPoly) -> Result<SigmaImage, DataError> {
        p.check_alphabet(self.alphabet())?;
        let v = self.sigma_hom().apply(p);
        Ok([[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]])
    }

    /// δ extended by the σ-derivation rule `δ(uv) = σ(u)δ(v) + δ(u)v`,
    /// independently of σ̂.
    pub fn extend_delta(&self, p: &NcPoly) -> Result<DeltaImage, DataError> {
        p.check_alphabet(self.alphabet())?;
        Ok(self.delta_with(&self.sigma_hom(), p))
    }

    pub(crate) fn delta_with(&self, sigma: &MatHom, p: &NcPoly) -> DeltaImage {
        let alphabet = self.alphabet();
        let field = self.field();
        let mut out: DeltaImage = Default::default();
        for (m, c) in p.terms() {
            let mut acc: DeltaImage = Default::default();
            let w = m.word();
            for k in 0..w.len() {
                let prefix = sigma.on_monomial(&alphabet.monomial(&w[..k]));
                let letter = NcPoly::generator(alphabet, w[k], field);
                let dx = &self.delta[w[k] as usize];
                let mut next: DeltaImage = Default::default();
                for i in 0..2 {
                    let mut e = acc[i].mul(&letter);
                    for j in 0..2 {
                        e = &e + &prefix[i * 2 + j].mul(&dx[j]);
                    }
                    next[i] = self.base.normal_form(&e);
                }
                acc = next;
            }
            for i in 0..2 {
                out[i].add_scaled(&acc[i], c);
            }
        }
        out
    }

    pub fn extend_sigma_hat(&self, p: &NcPoly) -> Result<[[NcPoly; 3]; 3], DataError> {
        p.check_alphabet(self.alphabet())?;
        let v = self.sigma_hat_hom().apply(p);
        Ok(std::array::from_fn(|i| std::array::from_fn(|j| v[i * 3 + j].clone())))
    }

    /// Alphabet of the extension: base letters, then `y1 < y2`.
    pub fn extension_alphabet(&self) -> Result<Alphabet, DataError> {
        Ok(self.alphabet().extended(&Y_NAMES, &self.dy)?)
    }

    /// Rewriting rules of the extension: the base rules, `y2·y1 → …` and
    /// `y_i·x → σ_i1(x)·y1 + σ_i2(x)·y2 + δ_i(x)` for every base generator.
    pub fn extension_rules(&self) -> Result<(Alphabet, Vec<Rule>, Vec<RuleTag>), DataError> {
        let ab = self.extension_alphabet()?;
        let field = self.field();
        let n = self.alphabet().len() as u16;
        let (y1, y2) = (n, n + 1);
        let yp = |l| NcPoly::generator(&ab, l, field);
        let mut rules: Vec<Rule> = self.base.rules().to_vec();
        let mut tags = vec![RuleTag::Base; rules.len()];
        let mut r1 = yp(y1).mul(&yp(y2)).scale(&self.p12);
        r1 = &r1 + &yp(y1).mul(&yp(y1)).scale(&self.p11);
        r1 = &r1 + &self.tau[0].mul(&yp(y1));
        r1 = &r1 + &self.tau[1].mul(&yp(y2));
        r1 = &r1 + &self.tau[2];
        rules.push(Rule {
            lead: ab.monomial(&[y2, y1]),
            rhs: r1,
        });
        tags.push(RuleTag::Quadratic);
        for i in 0..2u16 {
            for l in self.alphabet().letters() {
                let s = &self.sigma[l as usize][i as usize];
                let d = &self.delta[l as usize][i as usize];
                let rhs = &(&s[0].mul(&yp(y1)) + &s[1].mul(&yp(y2))) + d;
                rules.push(Rule {
                    lead: ab.monomial(&[n + i, l]),
                    rhs,
                });
                tags.push(RuleTag::Commutation);
            }
        }
        Ok((ab, rules, tags))
    }

    /// The extension's rewriting system (not yet certified confluent).
    pub fn extension_system(&self) -> Result<(ReductionSystem, Vec<RuleTag>), DataError> {
        let (ab, rules, tags) = self.extension_rules()?;
        let rs = ReductionSystem::from_rules(self.field(), ab, rules).map_err(|e| match e {
            AlgebraError::RuleOrder(s) => DataError::NonHomogeneous(format!(
                "extension rule cannot be oriented by its lead ({s}); check the y-degrees"
            )),
            other => DataError::Algebra(other),
        })?;
        Ok((rs, tags))
    }
}

/// Where an extension rule comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RuleTag {
    #[serde(rename = "base")]
    Base,
    /// The `y2·y1` relation.
    #[serde(rename = "quadratic")]
    Quadratic,
    /// A `y_i·x` commutation rule.
    #[serde(rename = "commutation")]
    Commutation,
}
