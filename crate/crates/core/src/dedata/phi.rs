use crate::ncalg::{Monomial, NcPoly};
use crate::report::CertReport;

use super::hom::letter_poly;
use super::{invert_endo, DEData, Inversion, MatHom, SigmaImage};

/// A candidate inverse of σ, stored on generators like σ itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMap {
    pub images: Vec<SigmaImage>,
}

impl PhiMap {
    pub fn hom(&self, data: &DEData) -> MatHom {
        MatHom::new(
            data.base().clone(),
            2,
            self.images
                .iter()
                .map(|s| vec![s[0][0].clone(), s[0][1].clone(), s[1][0].clone(), s[1][1].clone()])
                .collect(),
        )
    }

    pub fn render(&self, data: &DEData) -> Vec<String> {
        let ab = data.alphabet();
        ab.letters()
            .map(|l| {
                let m = &self.images[l as usize];
                format!(
                    "{} -> [[{}, {}], [{}, {}]]",
                    ab.name(l),
                    m[0][0].render(ab),
                    m[0][1].render(ab),
                    m[1][0].render(ab),
                    m[1][1].render(ab)
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiOutcome {
    Phi(PhiMap),
    /// The closed formula only covers `p11 = 0`, `p12 ≠ 0`.
    Unsupported(String),
    NotInvertible(String),
}

impl DEData {
    /// Inverse of σ from det σ when `p11 = 0` and `p12 = p ≠ 0`:
    /// `φ = [[σ22∘d⁻¹, −p·σ21∘d⁻¹], [−p⁻¹·σ12∘d⁻¹, σ11∘d⁻¹]]` with `d = det σ`.
    pub fn right_inverse_phi(&self) -> PhiOutcome {
        if !self.p11().is_zero() {
            return PhiOutcome::Unsupported("closed formula needs p11 = 0".into());
        }
        let Some(p_inv) = self.p12().inv() else {
            return PhiOutcome::Unsupported("closed formula needs p12 != 0".into());
        };
        let base = self.base();
        let det = match self.det_sigma(2) {
            Ok(d) => d.map,
            Err(e) => return PhiOutcome::NotInvertible(e.to_string()),
        };
        let d_inv = match invert_endo(&det, base) {
            Inversion::Inverse(m) => m,
            Inversion::NotInvertible { degree } => {
                return PhiOutcome::NotInvertible(format!("det sigma is singular in degree {degree}"))
            }
            Inversion::Uncertified(s) => return PhiOutcome::NotInvertible(s),
        };
        let sigma = self.sigma_hom();
        let p = self.p12();
        let images = d_inv
            .images
            .iter()
            .map(|di| {
                [
                    [sigma.entry(1, 1, di), sigma.entry(1, 0, di).scale(&-p)],
                    [sigma.entry(0, 1, di).scale(&-&p_inv), sigma.entry(0, 0, di)],
                ]
            })
            .collect();
        PhiOutcome::Phi(PhiMap { images })
    }

    /// Checks that `phi` is an algebra map `A → M_2(A)` and that
    /// `Σ_k φ_jk(σ_ik(r)) = δ_ij·r` and `Σ_k σ_kj(φ_ki(r)) = δ_ij·r` on every
    /// generator, then again on every irreducible word up to `sweep_degree`.
    pub fn verify_phi(&self, phi: &PhiMap, sweep_degree: u32) -> CertReport {
        let base = self.base();
        let alphabet = self.alphabet();
        let mut report = CertReport::new("inverse of sigma").with_bound(sweep_degree);
        if phi.images.len() != alphabet.len() {
            report.fail("shape", "one 2x2 image per generator is required");
            return report;
        }
        let sigma = self.sigma_hom();
        let ph = phi.hom(self);
        if let Some((ri, i, j, res)) = ph.relation_residual() {
            report.fail(
                format!("relation {}", base.rules()[ri].render(alphabet)),
                format!("entry ({i},{j}) of its image reduces to {}", res.render(alphabet)),
            );
        }
        let check = |r: &NcPoly, label: &str, report: &mut CertReport| {
            for i in 0..2 {
                for j in 0..2 {
                    let target = if i == j { r.clone() } else { NcPoly::zero() };
                    let mut a = NcPoly::zero();
                    let mut b = NcPoly::zero();
                    for k in 0..2 {
                        a = &a + &ph.entry(j, k, &sigma.entry(i, k, r));
                        b = &b + &sigma.entry(k, j, &ph.entry(k, i, r));
                    }
                    if a != target {
                        report.fail(
                            format!("phi after sigma at {label}, ({},{})", i + 1, j + 1),
                            format!("sum is {}", a.render(alphabet)),
                        );
                    }
                    if b != target {
                        report.fail(
                            format!("sigma after phi at {label}, ({},{})", i + 1, j + 1),
                            format!("sum is {}", b.render(alphabet)),
                        );
                    }
                }
            }
        };
        for l in alphabet.letters() {
            check(&letter_poly(base, l), alphabet.name(l), &mut report);
        }
        let words: Vec<Monomial> = (2..=sweep_degree)
            .flat_map(|d| base.irreducible_monomials(d))
            .filter(|m| m.len() > 1)
            .collect();
        for m in &words {
            check(
                &NcPoly::monomial(m.clone(), self.field().one()),
                &alphabet.render(m),
                &mut report,
            );
        }
        report.fact("generators_checked", alphabet.len());
        report.fact("words_swept", words.len());
        report
    }
}
