use std::collections::BTreeMap;

use crate::exactla::{ExactMatrix, Field, Scalar};
use crate::extension::{build, ExtensionBuild};
use crate::ncalg::{NcPoly, ReductionSystem};
use crate::report::CertReport;
use crate::session::parse_poly;

use super::{builtin, AnalysisError};

/// Substitutes `images` (indexed by source letter, written over the target
/// alphabet) into every defining relation of `source` and reduces in
/// `target`. With `reverse`, products are reversed, giving an
/// anti-homomorphism. Also reports the rank of the induced map on degree 1.
pub fn substitution_check(
    check: &str,
    source: &ReductionSystem,
    target: &ReductionSystem,
    images: &[NcPoly],
    reverse: bool,
) -> CertReport {
    let field = source.field();
    let (sab, tab) = (source.alphabet(), target.alphabet());
    let mut report = CertReport::new(check);
    for rule in source.rules() {
        let rel = &NcPoly::monomial(rule.lead.clone(), field.one()) - &rule.rhs;
        let residual = target.normal_form(&rel.substitute(images, field, reverse));
        if !residual.is_zero() {
            report.fail(
                format!("relation {}", rule.render(sab)),
                format!("residual {}", residual.render(tab)),
            );
        }
    }
    let basis = target.basis(1);
    let cols: Vec<Vec<Scalar>> = images
        .iter()
        .filter_map(|p| basis.coords(&target.normal_form(p), field).ok())
        .collect();
    if cols.len() == images.len() && !cols.is_empty() {
        let rank = ExactMatrix::from_columns(field, basis.len(), &cols).rank();
        report.fact("degree_one_rank", rank);
        if sab.len() == tab.len() && rank != sab.len() {
            report.fail("degree 1", format!("the substitution has rank {rank}"));
        }
    }
    report
}

fn images(sys: &ReductionSystem, texts: &[&str]) -> Result<Vec<NcPoly>, AnalysisError> {
    texts
        .iter()
        .map(|t| {
            parse_poly(t, sys.alphabet(), sys.field())
                .map_err(|e| AnalysisError::Invalid(e.to_string()))
        })
        .collect()
}

/// `x1 ↦ x2, x2 ↦ −x1, y1 ↦ y2, y2 ↦ −y1` on `B(h)`.
pub fn bh_automorphism_check(b: &ExtensionBuild) -> Result<CertReport, AnalysisError> {
    let sys = b.system();
    let imgs = images(sys, &["x2", "-x1", "y2", "-y1"])?;
    Ok(substitution_check("automorphism of B(h)", sys, sys, &imgs, false))
}

/// `x_i ↦ y_i, y_i ↦ x_i` with products reversed on `B(h)`.
pub fn bh_anti_automorphism_check(b: &ExtensionBuild) -> Result<CertReport, AnalysisError> {
    let sys = b.system();
    let imgs = images(sys, &["y1", "y2", "x1", "x2"])?;
    Ok(substitution_check("anti-automorphism of B(h)", sys, sys, &imgs, true))
}

/// `y2 ↦ y2 + bc/(b−1)·x` from `B1(p,a,b,c)` into `B1(p,a,b,0)`.
pub fn b1_isomorphism_check(
    p: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    field: Field,
) -> Result<CertReport, AnalysisError> {
    let params = |c: Scalar| -> BTreeMap<String, Scalar> {
        [("p", p.clone()), ("a", a.clone()), ("b", b.clone()), ("c", c)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    };
    let src = build(&builtin("B1", &params(c.clone()), field)?.data)?;
    let dst = build(&builtin("B1", &params(field.zero()), field)?.data)?;
    let shift = &(&b * &c) * &(&b - &field.one()).inv().expect("b != 1 in B1");
    let tsys = dst.system();
    let mut imgs = images(tsys, &["x", "y1", "y2"])?;
    imgs[2] = &imgs[2] + &imgs[0].scale(&shift);
    Ok(substitution_check(
        "B1 change of variable removing c",
        src.system(),
        tsys,
        &imgs,
        false,
    ))
}
