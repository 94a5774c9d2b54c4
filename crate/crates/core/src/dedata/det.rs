use crate::ncalg::{Monomial, NcPoly};
use crate::report::CertReport;

use super::hom::letter_poly;
use super::{DEData, DataError, EndoMap, MatHom};

/// det σ with the report of its endomorphism and multiplicativity checks.
#[derive(Clone, Debug)]
pub struct DetSigma {
    pub map: EndoMap,
    pub report: CertReport,
}

/// One of the naive "determinant" compositions and how it compares.
#[derive(Clone, Debug)]
pub struct NaiveVariant {
    pub name: &'static str,
    /// `None` when the variant needs `1/p12` and `p12 = 0`.
    pub map: Option<EndoMap>,
    pub equals_det: bool,
}

impl DEData {
    /// `r ↦ −p11·σ12(σ11(r)) + σ22(σ11(r)) − p12·σ12(σ21(r))` on any element.
    pub fn det_formula(&self, sigma: &MatHom, r: &NcPoly) -> NcPoly {
        let s11 = sigma.entry(0, 0, r);
        let s21 = sigma.entry(1, 0, r);
        let a = sigma.entry(0, 1, &s11).scale(&-self.p11());
        let b = sigma.entry(1, 1, &s11);
        let c = sigma.entry(0, 1, &s21).scale(&-self.p12());
        &(&a + &b) + &c
    }

    /// det σ on generators, certified to kill the base relations and to be
    /// multiplicative, `det(uv) = det(u)·det(v)`, on all pairs of
    /// irreducible words with `deg u + deg v ≤ bound`.
    pub fn det_sigma(&self, bound: u32) -> Result<DetSigma, DataError> {
        let base = self.base();
        let alphabet = self.alphabet();
        let sigma = self.sigma_hom();
        let map = EndoMap {
            images: alphabet
                .letters()
                .map(|l| self.det_formula(&sigma, &letter_poly(base, l)))
                .collect(),
        };
        let endo = map.check_endomorphism(base);
        if !endo.passed() {
            let w = &endo.witnesses[0];
            return Err(DataError::EndomorphismViolation(format!("{}: {}", w.label, w.detail)));
        }
        let mut report = CertReport::new("det sigma").with_bound(bound);
        report.fact("images", map.render(base));
        let field = self.field();
        let words: Vec<Monomial> = (1..bound)
            .flat_map(|d| base.irreducible_monomials(d))
            .collect();
        let mut pairs = 0usize;
        for u in &words {
            for v in &words {
                if u.degree() + v.degree() > bound {
                    continue;
                }
                pairs += 1;
                let pu = NcPoly::monomial(u.clone(), field.one());
                let pv = NcPoly::monomial(v.clone(), field.one());
                let whole = self.det_formula(&sigma, &base.normal_form(&pu.mul(&pv)));
                let split = base.mul_nf(
                    &self.det_formula(&sigma, &pu),
                    &self.det_formula(&sigma, &pv),
                );
                if whole != split {
                    report.fail(
                        format!("pair ({}, {})", alphabet.render(u), alphabet.render(v)),
                        format!(
                            "det(uv) = {}, det(u)det(v) = {}",
                            whole.render(alphabet),
                            split.render(alphabet)
                        ),
                    );
                }
            }
        }
        report.fact("multiplicative_pairs_checked", pairs);
        report.absorb(endo);
        Ok(DetSigma { map, report })
    }

    /// Four two-term compositions compared with det σ. The first two pair
    /// the indices naively; the last two are the forms of det σ itself
    /// when `p11 = 0`, in both composition orders.
    pub fn naive_det_variants(&self, det: &EndoMap) -> Vec<NaiveVariant> {
        let base = self.base();
        let sigma = self.sigma_hom();
        let inv = self.p12().inv();
        let comp = |a: usize, b: usize, c: usize, d: usize, r: &NcPoly| {
            sigma.entry(a, b, &sigma.entry(c, d, r))
        };
        let gens: Vec<NcPoly> = self
            .alphabet()
            .letters()
            .map(|l| letter_poly(base, l))
            .collect();
        // (name, first composition, second composition, uses 1/p12)
        let specs: [(&'static str, [usize; 4], [usize; 4], bool); 4] = [
            ("s22.s11 - p12*s21.s12", [1, 1, 0, 0], [1, 0, 0, 1], false),
            ("s11.s22 - p12^-1*s12.s21", [0, 0, 1, 1], [0, 1, 1, 0], true),
            ("s22.s11 - p12*s12.s21", [1, 1, 0, 0], [0, 1, 1, 0], false),
            ("s11.s22 - p12^-1*s21.s12", [0, 0, 1, 1], [1, 0, 0, 1], true),
        ];
        specs
            .iter()
            .map(|(name, a, b, uses_inverse)| {
                let coeff = if *uses_inverse { inv.clone() } else { Some(self.p12().clone()) };
                let map = coeff.map(|c| EndoMap {
                    images: gens
                        .iter()
                        .map(|r| {
                            let first = comp(a[0], a[1], a[2], a[3], r);
                            let second = comp(b[0], b[1], b[2], b[3], r).scale(&c);
                            &first - &second
                        })
                        .collect(),
                });
                let equals_det = map.as_ref() == Some(det);
                NaiveVariant {
                    name,
                    map,
                    equals_det,
                }
            })
            .collect()
    }

    /// Report form of [`DEData::naive_det_variants`]; informational, so it
    /// passes whatever the comparison says.
    pub fn naive_det_report(&self, det: &EndoMap) -> CertReport {
        let mut report = CertReport::new("naive determinant variants");
        for v in self.naive_det_variants(det) {
            match &v.map {
                Some(m) => report.fact(
                    v.name,
                    serde_json::json!({
                        "images": m.render(self.base()),
                        "equals_det_sigma": v.equals_det,
                    }),
                ),
                None => report.fact(v.name, "undefined (p12 = 0)"),
            }
        }
        report
    }
}
