//! Fixtures and property bodies shared by the property suite and the
//! acceptance harness.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use dext_core::analysis::builtin;
use dext_core::dedata::DEData;
use dext_core::exactla::{ExactMatrix, Field, Scalar};
use dext_core::extension::build;
use dext_core::ncalg::{Alphabet, Letter, Monomial, NcPoly};
use dext_core::report::CertReport;

pub fn params(field: Field, pairs: &[(&str, i64)]) -> BTreeMap<String, Scalar> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), field.from_i64(*v)))
        .collect()
}

pub fn example(name: &str, field: Field, pairs: &[(&str, i64)]) -> DEData {
    builtin(name, &params(field, pairs), field).unwrap().data
}

/// Every builtin, some at non-default parameters or over 𝔽_7. The first
/// `MUTABLE` entries have base generators and are used for mutations.
pub fn catalog() -> Vec<DEData> {
    let q = Field::Rational;
    let f7 = Field::prime(7).unwrap();
    vec![
        example("Bh", q, &[("h", 2)]),
        example("Bh", f7, &[("h", 3)]),
        example("B1", q, &[("c", 2)]),
        example("B2", q, &[("c", 1)]),
        example("B3", q, &[]),
        example("B4", q, &[]),
        example("B4", f7, &[("b", 2)]),
        example("rightonly", q, &[]),
        example("trivial", q, &[("p12", 2), ("p11", 1)]),
        example("trivial", q, &[("p12", 0)]),
    ]
}

pub const MUTABLE: usize = 8;

pub fn word(letters: u16, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..letters, 0..=max_len)
}

pub fn terms(letters: u16) -> impl Strategy<Value = Vec<(Vec<Letter>, i64)>> {
    prop::collection::vec((word(letters, 3), -3i64..=3), 0..4)
}

fn poly_from(ab: &Alphabet, field: Field, terms: &[(Vec<Letter>, i64)]) -> NcPoly {
    NcPoly::from_terms(
        terms
            .iter()
            .map(|(w, c)| (ab.monomial(w), field.from_i64(*c))),
    )
}

/// Generators named by the failing witnesses of either compatibility route.
pub fn failing_generators(r: &CertReport) -> BTreeSet<String> {
    r.witnesses
        .iter()
        .map(|w| {
            let label = &w.label;
            label
                .rsplit_once(" at ")
                .map(|(_, g)| g)
                .or_else(|| label.strip_prefix("y2*y1*"))
                .unwrap_or(label)
                .to_string()
        })
        .collect()
}

/// Both routes agree on the verdict and on the failing generators. Returns
/// whether the data was compatible.
pub fn routes_agree(d: &DEData) -> Result<bool, TestCaseError> {
    let formulas = d.check_compatibility_formulas();
    let ambiguity = d.check_compatibility_by_ambiguity();
    prop_assert_eq!(formulas.verdict, ambiguity.verdict);
    prop_assert_eq!(failing_generators(&formulas), failing_generators(&ambiguity));
    Ok(formulas.passed())
}

#[derive(Clone, Debug)]
pub enum Target {
    Sigma { i: usize, j: usize },
    Delta { i: usize },
    Tau { k: usize },
}

/// A single-term perturbation of one σ, δ or τ entry.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub example: usize,
    pub generator: usize,
    pub target: Target,
    pub coeff: i64,
    pub pick: usize,
}

pub fn mutation() -> impl Strategy<Value = Mutation> {
    let target = prop_oneof![
        (0..2usize, 0..2usize).prop_map(|(i, j)| Target::Sigma { i, j }),
        (0..2usize).prop_map(|i| Target::Delta { i }),
        (0..3usize).prop_map(|k| Target::Tau { k }),
    ];
    (
        0..MUTABLE,
        0..2usize,
        target,
        prop_oneof![-3i64..=-1, 1i64..=3],
        0..8usize,
    )
        .prop_map(|(example, generator, target, coeff, pick)| Mutation {
            example,
            generator,
            target,
            coeff,
            pick,
        })
}

/// Adds `coeff` times an irreducible base word of the right degree to the
/// chosen entry.
pub fn apply_mutation(d: &DEData, m: &Mutation) -> DEData {
    let base = d.base();
    let ab = d.alphabet();
    let g = m.generator % ab.len();
    let bump = |deg: u32| {
        let ms = base.irreducible_monomials(deg);
        NcPoly::monomial(ms[m.pick % ms.len()].clone(), d.field().from_i64(m.coeff))
    };
    let [d1, _] = d.dy();
    match m.target {
        Target::Sigma { i, j } => {
            let val = &d.sigma()[g][i][j] + &bump(ab.degrees()[g]);
            d.with_sigma_entry(g, i, j, val).unwrap()
        }
        Target::Delta { i } => {
            let mut delta = d.delta().to_vec();
            delta[g][i] = &delta[g][i] + &bump(ab.degrees()[g] + d1);
            d.with_delta_tau(delta, d.tau().clone()).unwrap()
        }
        Target::Tau { k } => {
            let deg = if k == 2 { 2 * d1 } else { d1 };
            let mut tau = d.tau().clone();
            tau[k] = &tau[k] + &bump(deg);
            d.with_delta_tau(d.delta().to_vec(), tau).unwrap()
        }
    }
}

pub fn mutation_agrees(m: &Mutation) -> Result<bool, TestCaseError> {
    routes_agree(&apply_mutation(&catalog()[m.example], m))
}

pub fn order_compatible(
    u: &[Letter],
    v: &[Letter],
    a: &[Letter],
    b: &[Letter],
) -> Result<(), TestCaseError> {
    let ab = Alphabet::new(
        vec!["x".into(), "z".into(), "y1".into(), "y2".into()],
        vec![1, 2, 1, 1],
    )
    .unwrap();
    let (u, v, a, b) = (ab.monomial(u), ab.monomial(v), ab.monomial(a), ab.monomial(b));
    let wrap = |m: &Monomial| m.surround(&u, &v);
    prop_assert_eq!(a.cmp(&b), wrap(&a).cmp(&wrap(&b)));
    prop_assert!(Monomial::one() <= a);
    Ok(())
}

pub fn normal_form_laws(
    which: usize,
    p: Vec<(Vec<Letter>, i64)>,
    q: Vec<(Vec<Letter>, i64)>,
) -> Result<(), TestCaseError> {
    let d = &catalog()[which];
    let b = build(d).unwrap();
    let sys = b.system();
    let n = sys.alphabet().len() as u16;
    let clip = |t: Vec<(Vec<Letter>, i64)>| -> Vec<(Vec<Letter>, i64)> {
        t.into_iter()
            .map(|(w, c)| (w.into_iter().map(|l| l % n).collect(), c))
            .collect()
    };
    let p = poly_from(sys.alphabet(), d.field(), &clip(p));
    let q = poly_from(sys.alphabet(), d.field(), &clip(q));
    let np = sys.normal_form(&p);
    let nq = sys.normal_form(&q);
    prop_assert_eq!(sys.normal_form(&np), np.clone());
    prop_assert!(np.monomials().all(|m| sys.is_irreducible(m)));
    prop_assert_eq!(sys.normal_form(&p.mul(&q)), sys.normal_form(&np.mul(&nq)));
    prop_assert_eq!(sys.normal_form(&(&p + &q)), &np + &nq);
    Ok(())
}

/// `σ̂(uv) = σ̂(u)·σ̂(v)` for base words with `|u| + |v| ≤ 5`.
pub fn sigma_hat_multiplicative(which: usize, u: &[Letter], v: &[Letter]) -> Result<(), TestCaseError> {
    let d = &catalog()[which];
    let base = d.base();
    let n = base.alphabet().len() as u16;
    let f = d.field();
    let to_poly = |w: &[Letter]| {
        let w: Vec<Letter> = w.iter().map(|l| l % n).collect();
        NcPoly::word(base.alphabet(), &w, f)
    };
    let (pu, pv) = (to_poly(u), to_poly(v));
    let hat = d.sigma_hat_hom();
    let whole = hat.apply(&base.normal_form(&pu.mul(&pv)));
    let parts = hat.multiply(&hat.apply(&pu), &hat.apply(&pv));
    prop_assert_eq!(whole, parts);
    Ok(())
}

/// Pairs of words over two letters with total length at most 5.
pub fn word_pair() -> impl Strategy<Value = (Vec<Letter>, Vec<Letter>)> {
    (0usize..=5).prop_flat_map(|total| {
        (0..=total).prop_flat_map(move |k| {
            (
                prop::collection::vec(0..2u16, k),
                prop::collection::vec(0..2u16, total - k),
            )
        })
    })
}

pub fn linear_algebra_laws(
    rows: usize,
    cols: usize,
    entries: &[i64],
    x: &[i64],
    prime: u32,
) -> Result<(), TestCaseError> {
    let field = if prime == 0 { Field::Rational } else { Field::prime(prime).unwrap() };
    let data: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| (0..cols).map(|j| field.from_i64(entries[i * 4 + j])).collect())
        .collect();
    let m = ExactMatrix::from_rows(field, data).unwrap();
    let kernel = m.kernel_basis();
    prop_assert_eq!(m.rank() + kernel.len(), cols);
    for k in &kernel {
        prop_assert!(m.mul_vec(k).unwrap().iter().all(Scalar::is_zero));
    }
    let x: Vec<Scalar> = x[..cols].iter().map(|&v| field.from_i64(v)).collect();
    let b = m.mul_vec(&x).unwrap();
    let y = m.solve(&b).unwrap().expect("consistent by construction");
    prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    Ok(())
}
