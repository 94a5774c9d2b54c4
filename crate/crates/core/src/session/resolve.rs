use std::sync::Arc;

use crate::dedata::{DEData, DeltaImage, SigmaImage};
use crate::exactla::{Field, Scalar};
use crate::ncalg::{Alphabet, NcPoly, ReductionSystem};

use super::ast::*;
use super::SessionError;

/// Evaluates an expression to a polynomial over `alphabet`.
pub fn eval(e: &Expr, alphabet: &Alphabet, field: Field) -> Result<NcPoly, SessionError> {
    Ok(match &e.kind {
        ExprKind::Int(n) => NcPoly::constant(field.ratio(n, &1.into()).expect("unit denominator")),
        ExprKind::Frac(n, d) => NcPoly::constant(field.ratio(n, d).map_err(|_| {
            SessionError::FieldLiteral {
                span: e.span,
                msg: format!("{n}/{d} is not an element of {field}"),
            }
        })?),
        ExprKind::Gen(g) => {
            let l = alphabet
                .letter(g)
                .ok_or_else(|| SessionError::UnknownGenerator {
                    span: e.span,
                    name: g.clone(),
                })?;
            NcPoly::generator(alphabet, l, field)
        }
        ExprKind::Neg(a) => -&eval(a, alphabet, field)?,
        ExprKind::Add(a, b) => &eval(a, alphabet, field)? + &eval(b, alphabet, field)?,
        ExprKind::Sub(a, b) => &eval(a, alphabet, field)? - &eval(b, alphabet, field)?,
        ExprKind::Mul(a, b) => eval(a, alphabet, field)?.mul(&eval(b, alphabet, field)?),
    })
}

/// Evaluates an expression that must be a constant.
pub fn eval_scalar(e: &Expr, field: Field) -> Result<Scalar, SessionError> {
    let p = eval(e, &Alphabet::empty(), field)?;
    Ok(p.coefficient(&crate::ncalg::Monomial::one())
        .cloned()
        .unwrap_or_else(|| field.zero()))
}

fn homogeneous(
    p: NcPoly,
    span: Span,
    what: &str,
    alphabet: &Alphabet,
) -> Result<NcPoly, SessionError> {
    if !p.is_zero() && p.homogeneous_degree().is_none() {
        return Err(SessionError::NonHomogeneous {
            span,
            what: format!("{what}: {}", p.render(alphabet)),
        });
    }
    Ok(p)
}

/// Builds the base algebra's rewriting system.
pub fn resolve_base(file: &SessionFile, field: Field) -> Result<Arc<ReductionSystem>, SessionError> {
    let block = file.base.clone().unwrap_or_default();
    let alphabet = Alphabet::new(
        block.generators.iter().map(|g| g.name.clone()).collect(),
        block.generators.iter().map(|g| g.degree).collect(),
    )
    .map_err(|e| SessionError::Invalid(e.to_string()))?;
    let mut relations = Vec::new();
    for r in &block.relations {
        let mut p = eval(&r.lhs, &alphabet, field)?;
        if let Some(rhs) = &r.rhs {
            p = &p - &eval(rhs, &alphabet, field)?;
        }
        relations.push(homogeneous(p, r.span, "relation", &alphabet)?);
    }
    ReductionSystem::from_relations(field, alphabet, relations)
        .map(Arc::new)
        .map_err(|e| SessionError::Invalid(e.to_string()))
}

/// Builds the DE-data, if the file has an extension block.
pub fn resolve_data(
    file: &SessionFile,
    base: &Arc<ReductionSystem>,
) -> Result<Option<DEData>, SessionError> {
    let Some(ext) = &file.extension else {
        return Ok(None);
    };
    let field = base.field();
    let alphabet = base.alphabet();
    let p12 = ext
        .p12
        .as_ref()
        .ok_or_else(|| SessionError::Invalid("extension block needs p12".into()))?;
    let p12 = eval_scalar(p12, field)?;
    let p11 = match &ext.p11 {
        Some(e) => eval_scalar(e, field)?,
        None => field.zero(),
    };
    let mut sigma: Vec<Option<SigmaImage>> = vec![None; alphabet.len()];
    for s in &ext.sigma {
        let l = alphabet
            .letter(&s.generator)
            .ok_or_else(|| SessionError::UnknownGenerator {
                span: s.span,
                name: s.generator.clone(),
            })?;
        let mut m: SigmaImage = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = homogeneous(
                    eval(&s.matrix[i][j], alphabet, field)?,
                    s.matrix[i][j].span,
                    "sigma entry",
                    alphabet,
                )?;
            }
        }
        if sigma[l as usize].replace(m).is_some() {
            return Err(SessionError::Invalid(format!("sigma({}) given twice", s.generator)));
        }
    }
    let sigma: Vec<SigmaImage> = sigma
        .into_iter()
        .enumerate()
        .map(|(g, s)| {
            s.ok_or_else(|| {
                SessionError::Invalid(format!("sigma({}) is missing", alphabet.name(g as u16)))
            })
        })
        .collect::<Result<_, _>>()?;
    let mut delta: Vec<DeltaImage> = vec![Default::default(); alphabet.len()];
    for d in &ext.delta {
        let l = alphabet
            .letter(&d.generator)
            .ok_or_else(|| SessionError::UnknownGenerator {
                span: d.span,
                name: d.generator.clone(),
            })?;
        for i in 0..2 {
            delta[l as usize][i] = homogeneous(
                eval(&d.column[i], alphabet, field)?,
                d.column[i].span,
                "delta entry",
                alphabet,
            )?;
        }
    }
    let mut tau: [NcPoly; 3] = Default::default();
    if let Some(t) = &ext.tau {
        for i in 0..3 {
            tau[i] = homogeneous(eval(&t[i], alphabet, field)?, t[i].span, "tau entry", alphabet)?;
        }
    }
    let data = DEData::new(
        base.clone(),
        p12,
        p11,
        sigma,
        delta,
        tau,
        ext.deg_y.unwrap_or([1, 1]),
    )
    .map_err(|e| SessionError::Invalid(e.to_string()))?;
    Ok(Some(data))
}
