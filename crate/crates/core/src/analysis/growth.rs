use crate::exactla::{ExactMatrix, Field, Scalar};
use crate::extension::ExtensionBuild;
use crate::ncalg::{NcPoly, ReductionSystem};
use crate::report::CertReport;

use super::AnalysisError;

/// Row-reduced spanning set of a subspace, kept as coordinate vectors.
fn reduced_rows(field: Field, dim: usize, vecs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() || dim == 0 {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(field, vecs).expect("rows share a length");
    let r = m.rref();
    (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
}

/// Dimension per degree of the subalgebra generated by `elements`, up to
/// `max_degree`.
pub fn subalgebra_dims(
    b: &ExtensionBuild,
    elements: &[NcPoly],
    max_degree: u32,
) -> Result<Vec<usize>, AnalysisError> {
    let sys = b.system();
    subalgebra_dims_in(sys, elements, max_degree)
}

pub fn subalgebra_dims_in(
    sys: &ReductionSystem,
    elements: &[NcPoly],
    max_degree: u32,
) -> Result<Vec<usize>, AnalysisError> {
    let field = sys.field();
    let ab = sys.alphabet();
    let mut gens = Vec::new();
    for z in elements {
        let z = sys.normal_form(z);
        match z.homogeneous_degree() {
            Some(d) if d > 0 => gens.push((d, z)),
            _ if z.is_zero() => {}
            _ => {
                return Err(AnalysisError::NonHomogeneous(format!(
                    "{} is not homogeneous of positive degree",
                    z.render(ab)
                )))
            }
        }
    }
    // spans[d] holds a basis of the degree-d part as polynomials.
    let mut spans: Vec<Vec<NcPoly>> = vec![vec![NcPoly::one(field)]];
    for d in 1..=max_degree {
        let basis = sys.basis(d);
        let mut vecs = Vec::new();
        for (e, z) in &gens {
            if *e > d {
                continue;
            }
            for s in &spans[(d - e) as usize] {
                let p = sys.normal_form(&s.mul(z));
                vecs.push(basis.coords(&p, field).expect("normal form"));
            }
        }
        let rows = reduced_rows(field, basis.len(), vecs);
        spans.push(rows.iter().map(|r| basis.poly(r)).collect());
    }
    Ok(spans.iter().map(Vec::len).collect())
}

/// Coefficient identity `H_{B!}(−t)·H_B(t) = 1` up to `max_degree`, where
/// `B!` is the quadratic dual of the presentation. Necessary condition only.
pub fn koszul_numeric_check(b: &ExtensionBuild, max_degree: u32) -> Result<CertReport, AnalysisError> {
    koszul_numeric_check_in(b.system(), max_degree)
}

pub fn koszul_numeric_check_in(
    sys: &ReductionSystem,
    max_degree: u32,
) -> Result<CertReport, AnalysisError> {
    let ab = sys.alphabet();
    let field = sys.field();
    let n = ab.len();
    if let Some(l) = ab.letters().find(|&l| ab.degree(l) != 1) {
        return Err(AnalysisError::NotQuadratic(format!(
            "generator {} has degree {}",
            ab.name(l),
            ab.degree(l)
        )));
    }
    let mut relations = Vec::new();
    for rule in sys.rules() {
        if rule.lead.len() != 2 {
            return Err(AnalysisError::NotQuadratic(format!(
                "rule {} is not quadratic",
                rule.render(ab)
            )));
        }
        let rel = &NcPoly::monomial(rule.lead.clone(), field.one()) - &rule.rhs;
        let mut v = vec![field.zero(); n * n];
        for (m, c) in rel.terms() {
            let w = m.word();
            if w.len() != 2 {
                return Err(AnalysisError::NotQuadratic(format!(
                    "rule {} is not homogeneous quadratic",
                    rule.render(ab)
                )));
            }
            v[w[0] as usize * n + w[1] as usize] = c.clone();
        }
        relations.push(v);
    }
    // Dual relations: vectors of V*⊗V* annihilating every relation.
    let dual: Vec<Vec<Scalar>> = if relations.is_empty() {
        (0..n * n)
            .map(|i| (0..n * n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        ExactMatrix::from_rows(field, relations)
            .expect("uniform rows")
            .kernel_basis()
    };
    let dual_dims = dual_hilbert(field, n, &dual, max_degree);
    let h = sys.hilbert_function(max_degree);
    let mut report = CertReport::new("koszul numeric identity").with_bound(max_degree);
    report.note("necessary condition only");
    for d in 1..=max_degree as usize {
        let sum: i64 = (0..=d)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * dual_dims[i] as i64 * h[d - i] as i64
            })
            .sum();
        if sum != 0 {
            report.fail(format!("degree {d}"), format!("coefficient is {sum}, expected 0"));
        }
    }
    let mut shown = dual_dims.clone();
    while shown.len() > 1 && shown.last() == Some(&0) {
        shown.pop();
    }
    report.fact("dual_hilbert", shown);
    report.fact("hilbert", h);
    Ok(report)
}

/// Dimensions of `T(V*)/(R⊥)` per degree. Degree `d` is the cokernel of
/// `B!_{d−2} ⊗ R⊥ → B!_{d−1} ⊗ V*`, so only quotient coordinates are kept.
fn dual_hilbert(field: Field, n: usize, dual: &[Vec<Scalar>], max_degree: u32) -> Vec<usize> {
    // Quotient data for one degree: the rref of the relation subspace of
    // B!_{d−1} ⊗ V*, and the free columns that index B!_d.
    struct Level {
        pivots: Vec<(usize, Vec<Scalar>)>,
        free: Vec<usize>,
        ambient: usize,
    }
    impl Level {
        fn project(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
            for (c, row) in &self.pivots {
                if v[*c].is_zero() {
                    continue;
                }
                let f = v[*c].clone();
                for (t, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *t = &*t - &(&f * r);
                    }
                }
            }
            self.free.iter().map(|&i| v[i].clone()).collect()
        }
    }
    let trivial = |dim: usize| Level {
        pivots: Vec::new(),
        free: (0..dim).collect(),
        ambient: dim,
    };
    let mut levels: Vec<Level> = vec![trivial(1)];
    if max_degree >= 1 {
        levels.push(trivial(n));
    }
    // `extend(d, u, k)` maps basis vector u of B!_{d−1} to coordinates of u·ξ_k in B!_d.
    for d in 2..=max_degree as usize {
        let prev = levels[d - 1].free.len();
        let prev2 = levels[d - 2].free.len();
        let ambient = prev * n;
        let mut gens = Vec::new();
        for u in 0..prev2 {
            for r in dual {
                let mut v = vec![field.zero(); ambient];
                for k in 0..n {
                    // u·ξ_k projected into B!_{d−1}
                    let mut e = vec![field.zero(); levels[d - 2].free.len() * n];
                    e[u * n + k] = field.one();
                    let uk = levels[d - 1].project(e);
                    for l in 0..n {
                        let c = &r[k * n + l];
                        if c.is_zero() {
                            continue;
                        }
                        for (j, x) in uk.iter().enumerate() {
                            if !x.is_zero() {
                                v[j * n + l] = &v[j * n + l] + &(c * x);
                            }
                        }
                    }
                }
                gens.push(v);
            }
        }
        let level = if gens.is_empty() || ambient == 0 {
            trivial(ambient)
        } else {
            let r = ExactMatrix::from_rows(field, gens).expect("uniform rows").rref();
            let pivots: Vec<(usize, Vec<Scalar>)> = r
                .pivots
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, r.reduced.row(i).to_vec()))
                .collect();
            let free = (0..ambient).filter(|c| !r.pivots.contains(c)).collect();
            Level {
                pivots,
                free,
                ambient,
            }
        };
        debug_assert_eq!(level.ambient, ambient);
        levels.push(level);
    }
    levels.iter().map(|l| l.free.len()).collect()
}
