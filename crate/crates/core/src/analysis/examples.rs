use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dedata::{DEData, DeltaImage, SigmaImage};
use crate::exactla::{Field, Scalar};
use crate::ncalg::{Alphabet, NcPoly, ReductionSystem};

use super::AnalysisError;

/// Names accepted by [`builtin`].
pub const EXAMPLE_NAMES: [&str; 7] = ["trivial", "B1", "B2", "B3", "B4", "Bh", "rightonly"];

/// A catalog example: its name, the parameter values used, and its DE-data.
#[derive(Clone, Debug)]
pub struct ExampleSpec {
    pub name: String,
    pub parameters: Vec<(String, Scalar)>,
    pub data: DEData,
}

struct Params<'a> {
    field: Field,
    given: &'a BTreeMap<String, Scalar>,
    used: Vec<(String, Scalar)>,
}

impl Params<'_> {
    fn get(&mut self, name: &str, default: i64) -> Scalar {
        let v = self
            .given
            .get(name)
            .cloned()
            .unwrap_or_else(|| self.field.from_i64(default));
        self.used.push((name.to_string(), v.clone()));
        v
    }

    fn finish(&self, example: &str) -> Result<(), AnalysisError> {
        for k in self.given.keys() {
            if !self.used.iter().any(|(n, _)| n == k) {
                return Err(AnalysisError::ParameterConstraintViolated(format!(
                    "{example} has no parameter `{k}`"
                )));
            }
        }
        Ok(())
    }
}

fn violated(msg: &str) -> AnalysisError {
    AnalysisError::ParameterConstraintViolated(msg.to_string())
}

fn gen(ab: &Alphabet, name: &str, field: Field) -> NcPoly {
    NcPoly::generator(ab, ab.letter(name).expect("builtin generator"), field)
}

fn polynomial_ring(field: Field) -> Arc<ReductionSystem> {
    Arc::new(ReductionSystem::free(field, Alphabet::uniform(&["x"])))
}

/// Builds a catalog example. Missing parameters take the defaults
/// `Bh: h=2`, `B1: p=2,a=1,b=3,c=0`, `B2: a=1,b=1,c=0`, `B3: a=2`,
/// `B4: a=2,b=1,c=1`, `trivial: p12=1,p11=0`.
pub fn builtin(
    name: &str,
    params: &BTreeMap<String, Scalar>,
    field: Field,
) -> Result<ExampleSpec, AnalysisError> {
    if let Some((k, v)) = params.iter().find(|(_, v)| v.field() != field) {
        return Err(AnalysisError::ParameterConstraintViolated(format!(
            "parameter {k} = {v} is not in {field}"
        )));
    }
    let mut p = Params {
        field,
        given: params,
        used: Vec::new(),
    };
    let zero = NcPoly::zero;
    let data = match name {
        "Bh" => {
            let h = p.get("h", 2);
            if h.is_zero() {
                return Err(violated("Bh needs h != 0"));
            }
            let ab = Alphabet::uniform(&["x1", "x2"]);
            let x1 = gen(&ab, "x1", field);
            let x2 = gen(&ab, "x2", field);
            let rel = &x2.mul(&x1) + &x1.mul(&x2);
            let base = Arc::new(ReductionSystem::from_relations(field, ab, vec![rel])?);
            let s1: SigmaImage = [[&x1 + &x2, x1.clone()], [x2.clone(), zero()]];
            let s2: SigmaImage = [[zero(), x1.clone()], [-&x2, &x2 - &x1]];
            let sigma = [s1, s2]
                .into_iter()
                .map(|s| s.map(|row| row.map(|e| e.scale(&h))))
                .collect();
            DEData::new(
                base,
                field.from_i64(-1),
                field.zero(),
                sigma,
                vec![Default::default(); 2],
                Default::default(),
                [1, 1],
            )?
        }
        "B1" => {
            let (pp, a, b, c) = (p.get("p", 2), p.get("a", 1), p.get("b", 3), p.get("c", 0));
            if pp.is_zero() {
                return Err(violated("B1 needs p != 0"));
            }
            if b.is_zero() || b.is_one() {
                return Err(violated("B1 needs b != 0, 1"));
            }
            let base = polynomial_ring(field);
            let x = gen(base.alphabet(), "x", field);
            let xx = x.mul(&x);
            let binv = b.inv().expect("b != 0");
            let one = field.one();
            // bc/(1-b) · (pb - 1)
            let t1 = &(&(&b * &c) * &(&one - &b).inv().expect("b != 1")) * &(&(&pp * &b) - &one);
            let sigma = vec![[[x.scale(&b), zero()], [zero(), x.scale(&binv)]]];
            let delta: Vec<DeltaImage> = vec![[zero(), xx.scale(&c)]];
            DEData::new(
                base,
                pp,
                field.zero(),
                sigma,
                delta,
                [x.scale(&t1), zero(), xx.scale(&a)],
                [1, 1],
            )?
        }
        "B2" => {
            let (a, b, c) = (p.get("a", 1), p.get("b", 1), p.get("c", 0));
            if b.is_zero() {
                return Err(violated("B2 needs b != 0"));
            }
            let base = polynomial_ring(field);
            let x = gen(base.alphabet(), "x", field);
            let xx = x.mul(&x);
            let binv = b.inv().expect("b != 0");
            let sigma = vec![[[zero(), x.scale(&binv)], [x.scale(&b), zero()]]];
            let delta: Vec<DeltaImage> = vec![[xx.scale(&c), xx.scale(&-&(&b * &c))]];
            DEData::new(
                base,
                field.from_i64(-1),
                field.zero(),
                sigma,
                delta,
                [zero(), zero(), xx.scale(&a)],
                [1, 1],
            )?
        }
        "B3" => {
            let a = p.get("a", 2);
            if a.is_zero() {
                return Err(violated("B3 needs a != 0"));
            }
            let base = polynomial_ring(field);
            let x = gen(base.alphabet(), "x", field);
            let sigma = vec![[[x.scale(&a), x.clone()], [zero(), x.scale(&a)]]];
            DEData::new(
                base,
                field.one(),
                field.zero(),
                sigma,
                vec![Default::default()],
                Default::default(),
                [1, 1],
            )?
        }
        "B4" => {
            let (a, b, c) = (p.get("a", 2), p.get("b", 1), p.get("c", 1));
            let one = field.one();
            let b1 = &b + &one;
            if b1.is_zero() {
                return Err(violated("B4 needs b != -1"));
            }
            let Some(binv) = b.inv() else {
                return Err(violated("B4 needs b != 0 (sigma uses 1/b)"));
            };
            let base = polynomial_ring(field);
            let x = gen(base.alphabet(), "x", field);
            let xx = x.mul(&x);
            let two = field.from_i64(2);
            let s21 = &two + &(&two * &binv);
            let sigma = vec![[[x.clone(), zero()], [x.scale(&s21), x.clone()]]];
            let delta: Vec<DeltaImage> = vec![[xx.scale(&b), zero()]];
            let t2 = &b * &b1.inv().expect("b != -1");
            DEData::new(
                base,
                one.clone(),
                one,
                sigma,
                delta,
                [x.scale(&a), x.scale(&t2), xx.scale(&c)],
                [1, 1],
            )?
        }
        "trivial" => {
            let (p12, p11) = (p.get("p12", 1), p.get("p11", 0));
            let base = Arc::new(ReductionSystem::free(field, Alphabet::empty()));
            DEData::new(base, p12, p11, Vec::new(), Vec::new(), Default::default(), [1, 1])?
        }
        "rightonly" => {
            let base = Arc::new(ReductionSystem::free(field, Alphabet::uniform(&["x1", "x2"])));
            let sigma = ["x1", "x2"]
                .iter()
                .map(|g| [[gen(base.alphabet(), g, field), zero()], [zero(), zero()]])
                .collect();
            DEData::new(
                base,
                field.zero(),
                field.zero(),
                sigma,
                vec![Default::default(); 2],
                Default::default(),
                [1, 1],
            )?
        }
        other => return Err(AnalysisError::UnknownExample(other.to_string())),
    };
    p.finish(name)?;
    Ok(ExampleSpec {
        name: name.to_string(),
        parameters: p.used,
        data,
    })
}

/// Parses `name=value` pairs into field scalars; values are integers or `n/d`.
pub fn parse_params(pairs: &[String], field: Field) -> Result<BTreeMap<String, Scalar>, AnalysisError> {
    let mut out = BTreeMap::new();
    for pair in pairs {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| violated(&format!("parameter `{pair}` is not name=value")))?;
        let expr = crate::session::parse_expr(v.trim())
            .map_err(|e| violated(&format!("parameter {k}: {e}")))?;
        let s = crate::session::eval_scalar(&expr, field)
            .map_err(|e| violated(&format!("parameter {k}: {e}")))?;
        out.insert(k.trim().to_string(), s);
    }
    Ok(out)
}
