use crate::dedata::EndoMap;
use crate::exactla::{ExactMatrix, Scalar};
use crate::extension::ExtensionBuild;
use crate::ncalg::NcPoly;
use crate::report::CertReport;

use super::AnalysisError;

fn require_trimmed(b: &ExtensionBuild) -> Result<(), AnalysisError> {
    if b.data().is_trimmed() {
        Ok(())
    } else {
        Err(AnalysisError::NotTrimmed)
    }
}

/// `p11·y1 − y2` and `p12·y1`, the two components of `g(1)`.
fn g_components(b: &ExtensionBuild) -> [NcPoly; 2] {
    let d = b.data();
    [&b.y(0).scale(d.p11()) - &b.y(1), b.y(0).scale(d.p12())]
}

struct Degree<'a> {
    b: &'a ExtensionBuild,
}

impl Degree<'_> {
    fn basis(&self, d: i64) -> Vec<NcPoly> {
        if d < 0 {
            return Vec::new();
        }
        let f = self.b.data().field();
        self.b
            .system()
            .basis(d as u32)
            .monomials
            .iter()
            .map(|m| NcPoly::monomial(m.clone(), f.one()))
            .collect()
    }

    fn coords(&self, d: i64, p: &NcPoly) -> Vec<Scalar> {
        if d < 0 {
            return Vec::new();
        }
        let sys = self.b.system();
        sys.basis(d as u32)
            .coords(&sys.normal_form(p), self.b.data().field())
            .expect("normal form lies in the degree basis")
    }
}

fn stacked(field: crate::exactla::Field, rows: usize, cols: Vec<Vec<Scalar>>) -> ExactMatrix {
    ExactMatrix::from_columns(field, rows, &cols)
}

/// Degree-wise exactness of `0 → B → B⊕B → B → A → 0` with
/// `g(c) = (c·(p11·y1 − y2), c·p12·y1)`, `f(a, b) = a·y1 + b·y2` and `ε`
/// the projection onto the words without `y`.
pub fn exact_sequence_check(b: &ExtensionBuild, max_degree: u32) -> Result<CertReport, AnalysisError> {
    require_trimmed(b)?;
    let field = b.data().field();
    let [s1, s2] = b.data().dy().map(|v| v as i64);
    let deg = Degree { b };
    let [g1, g2] = g_components(b);
    let (y1, y2) = (b.y(0), b.y(1));
    let n_base = b.data().alphabet().len();
    let mut report = CertReport::new("exact sequence").with_bound(max_degree);
    let mut identity = Vec::new();
    for d in 0..=max_degree as i64 {
        let (b0, b1, b2, b3) = (deg.basis(d - s1 - s2), deg.basis(d - s1), deg.basis(d - s2), deg.basis(d));
        let n0 = b0.len();
        let n1 = b1.len() + b2.len();
        let n2 = b3.len();
        let a_words: Vec<usize> = b3
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                p.monomials()
                    .all(|m| m.word().iter().all(|&l| (l as usize) < n_base))
            })
            .map(|(i, _)| i)
            .collect();
        let n3 = a_words.len();
        let g_cols = b0
            .iter()
            .map(|c| {
                let mut v = deg.coords(d - s1, &c.mul(&g1));
                v.extend(deg.coords(d - s2, &c.mul(&g2)));
                v
            })
            .collect();
        let g = stacked(field, n1, g_cols);
        let f_cols = b1
            .iter()
            .map(|a| deg.coords(d, &a.mul(&y1)))
            .chain(b2.iter().map(|c| deg.coords(d, &c.mul(&y2))))
            .collect();
        let f = stacked(field, n2, f_cols);
        let e_cols = (0..n2)
            .map(|j| {
                a_words
                    .iter()
                    .map(|&i| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        let e = stacked(field, n3, e_cols);
        let label = format!("degree {d}");
        if n0 > 0 && n2 > 0 && !f.mul(&g).expect("shapes").is_zero() {
            report.fail(&label, "f∘g is not zero");
        }
        if n1 > 0 && n3 > 0 && !e.mul(&f).expect("shapes").is_zero() {
            report.fail(&label, "ε∘f is not zero");
        }
        let rank = |m: &ExactMatrix| if m.rows() == 0 || m.cols() == 0 { 0 } else { m.rank() };
        let (rg, rf, re) = (rank(&g), rank(&f), rank(&e));
        if rg != n0 {
            report.fail(&label, format!("g has rank {rg} on a space of dimension {n0}"));
        }
        if rf != n1 - rg {
            report.fail(&label, format!("not exact at B⊕B: rank f = {rf}, kernel of f ≠ image of g (rank {rg}, dimension {n1})"));
        }
        if re != n2 - rf {
            report.fail(&label, format!("not exact at B: rank ε = {re}, rank f = {rf}, dimension {n2}"));
        }
        if re != n3 {
            report.fail(&label, format!("ε has rank {re}, A has dimension {n3}"));
        }
        let alternating = n0 as i64 - n1 as i64 + n2 as i64;
        if alternating != n3 as i64 {
            report.fail(&label, format!("{n0} - {n1} + {n2} = {alternating}, expected {n3}"));
        }
        identity.push(format!("{n0} - {n1} + {n2} = {n3}"));
    }
    report.fact("dimension_identity", identity);
    Ok(report)
}

/// Twisted right-module property of `g`, using the computed det σ.
pub fn g_twist_check(b: &ExtensionBuild, max_degree: u32) -> Result<CertReport, AnalysisError> {
    require_trimmed(b)?;
    let det = b.data().det_sigma(max_degree.min(3))?;
    if !det.report.passed() {
        let mut report = CertReport::new("twisted bimodule map");
        report.absorb(det.report);
        return Ok(report);
    }
    g_twist_check_with(b, &det.map, max_degree)
}

/// Checks, for every base generator `r`,
/// `g1·σ11(r) + g2·σ21(r) = det(r)·g1` and `g1·σ12(r) + g2·σ22(r) = det(r)·g2`
/// where `(g1, g2) = g(1)`, then `g(c) ∗ r = g(c·det(r))` on every basis
/// word `c` of degree at most `max_degree − deg r − dy`.
pub fn g_twist_check_with(
    b: &ExtensionBuild,
    det: &EndoMap,
    max_degree: u32,
) -> Result<CertReport, AnalysisError> {
    require_trimmed(b)?;
    let data = b.data();
    let sys = b.system();
    let ab = sys.alphabet();
    let field = data.field();
    let g = g_components(b);
    let base_ab = data.alphabet();
    let mut report = CertReport::new("twisted bimodule map").with_bound(max_degree);
    let mut checked = 0usize;
    for l in base_ab.letters() {
        let s = &data.sigma()[l as usize];
        let r_det = &det.images[l as usize];
        for j in 0..2 {
            let lhs = &g[0].mul(&s[0][j]) + &g[1].mul(&s[1][j]);
            let residual = sys.normal_form(&(&lhs - &r_det.mul(&g[j])));
            if !residual.is_zero() {
                report.fail(
                    format!("generator {} component {}", base_ab.name(l), j + 1),
                    format!("residual {}", residual.render(ab)),
                );
            }
        }
        let top = max_degree as i64 - base_ab.degree(l) as i64 - data.dy()[1].max(data.dy()[0]) as i64;
        for d in 0..=top {
            for m in &sys.basis(d as u32).monomials {
                let c = NcPoly::monomial(m.clone(), field.one());
                let gc = [c.mul(&g[0]), c.mul(&g[1])];
                let cd = c.mul(r_det);
                for j in 0..2 {
                    let twisted = &gc[0].mul(&s[0][j]) + &gc[1].mul(&s[1][j]);
                    let residual = sys.normal_form(&(&twisted - &cd.mul(&g[j])));
                    if !residual.is_zero() {
                        report.fail(
                            format!("g({}) * {}", ab.render(m), base_ab.name(l)),
                            format!("component {} residual {}", j + 1, residual.render(ab)),
                        );
                    }
                }
                checked += 1;
            }
        }
    }
    report.fact("words_checked", checked);
    Ok(report)
}
