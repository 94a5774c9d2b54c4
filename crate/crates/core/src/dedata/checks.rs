use crate::ncalg::NcPoly;
use crate::report::CertReport;

use super::hom::letter_poly;
use super::{DEData, MatHom};

/// The six compatibility constraints, named by the coefficient of the
/// normal form of `y2·y1·r` they compare.
pub const CONSTRAINT_NAMES: [&str; 6] = ["y1*y1", "y1*y2", "y2*y2", "y1", "y2", "1"];

impl DEData {
    /// σ̂ kills every base relation, i.e. σ is a homomorphism and δ a
    /// σ-derivation on `A`.
    pub fn validate_hom(&self) -> CertReport {
        let alphabet = self.alphabet();
        let mut report = CertReport::new("homomorphism laws");
        report.fact("relations_checked", self.base().rules().len());
        if let Some((ri, i, j, res)) = self.sigma_hat_hom().relation_residual() {
            report.fail(
                format!("relation {}", self.base().rules()[ri].render(alphabet)),
                format!("entry ({i},{j}) of the 3x3 image reduces to {}", res.render(alphabet)),
            );
        }
        report
    }

    /// Both sides of each of the six constraints at `r`.
    pub(crate) fn constraint_sides(&self, hat: &MatHom, r: &NcPoly) -> [(NcPoly, NcPoly); 6] {
        let base = self.base();
        let s = |i: usize, j: usize, p: &NcPoly| hat.entry(i, j, p);
        // σ_ab(σ_cd(r)); column 0 is δ
        let comp = |a, b, c, d| s(a, b, &s(c, d, r));
        let (p11, p12) = (self.p11(), self.p12());
        let [t1, t2, t0] = self.tau();
        // τ multiplies on the right where it comes from rewriting a·y2·y1,
        // and on the left where it comes from the tail of that relation
        let right = |p: NcPoly, t: &NcPoly| base.normal_form(&p.mul(t));
        let left = |t: &NcPoly, p: NcPoly| base.normal_form(&t.mul(&p));
        let sum = |parts: Vec<NcPoly>| parts.iter().fold(NcPoly::zero(), |acc, p| &acc + p);
        let k = |c: &crate::exactla::Scalar, p: NcPoly| p.scale(c);

        let c1 = (
            sum(vec![comp(2, 1, 1, 1), k(p11, comp(2, 2, 1, 1))]),
            sum(vec![
                k(p11, comp(1, 1, 1, 1)),
                k(&(p11 * p11), comp(1, 2, 1, 1)),
                k(p12, comp(1, 1, 2, 1)),
                k(&(p11 * p12), comp(1, 2, 2, 1)),
            ]),
        );
        let c2 = (
            sum(vec![comp(2, 1, 1, 2), k(p12, comp(2, 2, 1, 1))]),
            sum(vec![
                k(p11, comp(1, 1, 1, 2)),
                k(&(p11 * p12), comp(1, 2, 1, 1)),
                k(p12, comp(1, 1, 2, 2)),
                k(&(p12 * p12), comp(1, 2, 2, 1)),
            ]),
        );
        let c3 = (
            comp(2, 2, 1, 2),
            sum(vec![k(p11, comp(1, 2, 1, 2)), k(p12, comp(1, 2, 2, 2))]),
        );
        let linear = |t: &NcPoly, col: usize| {
            (
                sum(vec![
                    comp(2, 0, 1, col),
                    comp(2, col, 1, 0),
                    right(comp(2, 2, 1, 1), t),
                ]),
                sum(vec![
                    k(
                        p11,
                        sum(vec![
                            comp(1, 0, 1, col),
                            comp(1, col, 1, 0),
                            right(comp(1, 2, 1, 1), t),
                        ]),
                    ),
                    k(
                        p12,
                        sum(vec![
                            comp(1, 0, 2, col),
                            comp(1, col, 2, 0),
                            right(comp(1, 2, 2, 1), t),
                        ]),
                    ),
                    left(t1, s(1, col, r)),
                    left(t2, s(2, col, r)),
                ]),
            )
        };
        let c4 = linear(t1, 1);
        let c5 = linear(t2, 2);
        let c6 = (
            sum(vec![comp(2, 0, 1, 0), right(comp(2, 2, 1, 1), t0)]),
            sum(vec![
                k(p11, sum(vec![comp(1, 0, 1, 0), right(comp(1, 2, 1, 1), t0)])),
                k(p12, sum(vec![comp(1, 0, 2, 0), right(comp(1, 2, 2, 1), t0)])),
                left(t1, s(1, 0, r)),
                left(t2, s(2, 0, r)),
                left(t0, r.clone()),
            ]),
        );
        [c1, c2, c3, c4, c5, c6]
    }

    /// Evaluates the six compatibility constraints on every base generator
    /// by direct composition of σ and δ.
    pub fn check_compatibility_formulas(&self) -> CertReport {
        let alphabet = self.alphabet();
        let hat = self.sigma_hat_hom();
        let mut report = CertReport::new("compatibility constraints (formulas)");
        let mut checked = 0usize;
        for l in alphabet.letters() {
            let r = letter_poly(self.base(), l);
            for (idx, (lhs, rhs)) in self.constraint_sides(&hat, &r).into_iter().enumerate() {
                checked += 1;
                if lhs != rhs {
                    report.fail(
                        format!("coefficient of {} at {}", CONSTRAINT_NAMES[idx], alphabet.name(l)),
                        format!("left {}; right {}", lhs.render(alphabet), rhs.render(alphabet)),
                    );
                }
            }
        }
        report.fact("constraints_checked", checked);
        report
    }

    /// Rewrites `(y2·y1)·r` and `y2·(y1·r)` to normal form in the
    /// extension's rewriting system and compares, for every base generator.
    pub fn check_compatibility_by_ambiguity(&self) -> CertReport {
        let mut report = CertReport::new("compatibility constraints (ambiguity)");
        let (rs, _) = match self.extension_system() {
            Ok(x) => x,
            Err(e) => {
                report.fail("extension rules", e.to_string());
                return report;
            }
        };
        let ab = rs.alphabet().clone();
        let field = self.field();
        let n = self.alphabet().len() as u16;
        let y2y1 = rs.rule_for_lead(&[n + 1, n]).expect("quadratic rule");
        let y2 = NcPoly::generator(&ab, n + 1, field);
        for l in self.alphabet().letters() {
            let r = NcPoly::generator(&ab, l, field);
            let first = rs.normal_form(&rs.rules()[y2y1].rhs.mul(&r));
            let y1r = rs.rule_for_lead(&[n, l]).expect("commutation rule");
            let second = rs.normal_form(&y2.mul(&rs.rules()[y1r].rhs));
            if first != second {
                report.fail(
                    format!("y2*y1*{}", ab.name(l)),
                    format!(
                        "(y2*y1)*{0} gives {1}; y2*(y1*{0}) gives {2}",
                        ab.name(l),
                        first.render(&ab),
                        second.render(&ab)
                    ),
                );
            }
        }
        report.fact("generators_checked", self.alphabet().len());
        report
    }
}
