use rayon::prelude::*;
use serde::Serialize;

use crate::exactla::{ExactMatrix, Field, Scalar};
use crate::extension::ExtensionBuild;
use crate::ncalg::{Letter, NcPoly};

use super::AnalysisError;

/// `z` together with multipliers `m_w` such that `w·z = z·m_w` for every
/// generator `w` of the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCert {
    pub element: NcPoly,
    pub multipliers: Vec<(Letter, NcPoly)>,
}

#[derive(Serialize)]
struct RenderedCert {
    element: String,
    multipliers: Vec<(String, String)>,
}

impl NormalCert {
    pub fn multiplier(&self, l: Letter) -> Option<&NcPoly> {
        self.multipliers.iter().find(|(w, _)| *w == l).map(|(_, m)| m)
    }

    /// Re-checks `NF(w·z − z·m_w) = 0` for every generator.
    pub fn verify(&self, b: &ExtensionBuild) -> bool {
        let sys = b.system();
        let f = b.data().field();
        self.multipliers.iter().all(|(w, m)| {
            let wz = NcPoly::generator(sys.alphabet(), *w, f).mul(&self.element);
            sys.normal_form(&(&wz - &self.element.mul(m))).is_zero()
        })
    }

    pub fn render(&self, b: &ExtensionBuild) -> serde_json::Value {
        let ab = b.system().alphabet();
        serde_json::to_value(RenderedCert {
            element: self.element.render(ab),
            multipliers: self
                .multipliers
                .iter()
                .map(|(w, m)| (ab.name(*w).to_string(), m.render(ab)))
                .collect(),
        })
        .expect("plain data serializes")
    }
}

/// Solves `NF(w·z) = NF(z·m_w)` for each generator `w`; `None` when some
/// system is inconsistent, i.e. `z` is not normal.
pub fn check_normal(b: &ExtensionBuild, z: &NcPoly) -> Result<Option<NormalCert>, AnalysisError> {
    let sys = b.system();
    let field = b.data().field();
    let z = sys.normal_form(z);
    let deg = match z.homogeneous_degree() {
        Some(d) => d,
        None if z.is_zero() => 0,
        None => {
            return Err(AnalysisError::NonHomogeneous(z.render(sys.alphabet())));
        }
    };
    let ab = sys.alphabet();
    let mut multipliers = Vec::new();
    for w in ab.letters() {
        let e = ab.degree(w);
        let target_basis = sys.basis(deg + e);
        let coords = |p: &NcPoly| {
            target_basis
                .coords(&sys.normal_form(p), field)
                .expect("normal form lies in the degree basis")
        };
        let wz = coords(&NcPoly::generator(ab, w, field).mul(&z));
        let cands = sys.basis(e);
        let cols: Vec<Vec<Scalar>> = cands
            .monomials
            .iter()
            .map(|m| coords(&z.mul(&NcPoly::monomial(m.clone(), field.one()))))
            .collect();
        let mat = ExactMatrix::from_columns(field, target_basis.len(), &cols);
        let sol = if cols.is_empty() {
            wz.iter().all(Scalar::is_zero).then(Vec::new)
        } else {
            mat.solve(&wz).expect("dimensions agree")
        };
        let Some(sol) = sol else {
            return Ok(None);
        };
        multipliers.push((w, cands.poly(&sol)));
    }
    Ok(Some(NormalCert {
        element: z,
        multipliers,
    }))
}

/// Result of an exhaustive search over the projective space of one degree.
#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete { points: u64, normal: Vec<NormalCert> },
    Unsupported(String),
}

/// Number of points of the projective space of dimension `n − 1` over `𝔽_p`.
pub fn projective_points(p: u64, n: usize) -> u64 {
    (0..n).map(|i| p.pow(i as u32)).sum()
}

/// Decodes the `index`-th point: first nonzero coordinate 1, later
/// coordinates read as base-`p` digits.
fn point(index: u64, p: u64, n: usize, field: Field) -> Vec<Scalar> {
    let mut rest = index;
    let mut lead = 0;
    while lead < n {
        let block = p.pow((n - 1 - lead) as u32);
        if rest < block {
            break;
        }
        rest -= block;
        lead += 1;
    }
    let mut v = vec![field.zero(); n];
    v[lead] = field.one();
    for slot in v.iter_mut().skip(lead + 1).rev() {
        *slot = field.from_i64((rest % p) as i64);
        rest /= p;
    }
    v
}

/// Tests every projective point of the given degree of `B` for normality.
/// Only finite fields are supported.
pub fn enumerate_normal(b: &ExtensionBuild, degree: u32) -> Enumeration {
    let field = b.data().field();
    let Field::Prime(p) = field else {
        return Enumeration::Unsupported("unsupported: use check_normal".into());
    };
    let sys = b.system();
    let ab = sys.alphabet();
    let basis = sys.basis(degree);
    let n = basis.len();
    if n == 0 {
        return Enumeration::Complete {
            points: 0,
            normal: Vec::new(),
        };
    }
    let elems: Vec<NcPoly> = basis
        .monomials
        .iter()
        .map(|m| NcPoly::monomial(m.clone(), field.one()))
        .collect();
    // Per generator: coordinates of w·b_i and b_i·c_j in degree + deg w.
    struct Gen {
        rows: usize,
        left: Vec<Vec<Scalar>>,
        right: Vec<Vec<Vec<Scalar>>>,
    }
    let gens: Vec<Gen> = ab
        .letters()
        .map(|w| {
            let e = ab.degree(w);
            let target = sys.basis(degree + e);
            let coords = |q: &NcPoly| target.coords(&sys.normal_form(q), field).expect("normal form");
            let wpoly = NcPoly::generator(ab, w, field);
            let cands: Vec<NcPoly> = sys
                .basis(e)
                .monomials
                .iter()
                .map(|m| NcPoly::monomial(m.clone(), field.one()))
                .collect();
            Gen {
                rows: target.len(),
                left: elems.iter().map(|bi| coords(&wpoly.mul(bi))).collect(),
                right: elems
                    .iter()
                    .map(|bi| cands.iter().map(|c| coords(&bi.mul(c))).collect())
                    .collect(),
            }
        })
        .collect();
    let total = projective_points(p as u64, n);
    let normal_points: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let z = point(idx, p as u64, n, field);
            gens.iter().all(|g| {
                let mut target = vec![field.zero(); g.rows];
                let ncols = g.right.first().map_or(0, Vec::len);
                let mut cols = vec![vec![field.zero(); g.rows]; ncols];
                for (i, zi) in z.iter().enumerate() {
                    if zi.is_zero() {
                        continue;
                    }
                    for (t, v) in target.iter_mut().zip(&g.left[i]) {
                        *t = &*t + &(zi * v);
                    }
                    for (col, src) in cols.iter_mut().zip(&g.right[i]) {
                        for (t, v) in col.iter_mut().zip(src) {
                            *t = &*t + &(zi * v);
                        }
                    }
                }
                if ncols == 0 {
                    return target.iter().all(Scalar::is_zero);
                }
                ExactMatrix::from_columns(field, g.rows, &cols)
                    .solve(&target)
                    .expect("dimensions agree")
                    .is_some()
            })
        })
        .collect();
    let normal = normal_points
        .into_iter()
        .map(|idx| {
            let z = basis.poly(&point(idx, p as u64, n, field));
            check_normal(b, &z)
                .expect("basis combinations are homogeneous")
                .expect("the search and the certificate agree")
        })
        .collect();
    Enumeration::Complete {
        points: total,
        normal,
    }
}
