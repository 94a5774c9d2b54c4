//! The presentation of `B` assembled from DE-data, and degree-wise
//! certification of its module-theoretic properties.

use std::sync::Arc;

use thiserror::Error;

use crate::dedata::{DEData, DataError, PhiMap, PhiOutcome, RuleTag, SigmaImage};
use crate::exactla::{ExactMatrix, Scalar};
use crate::ncalg::{check_confluence, series_quotient_check, Letter, Monomial, NcPoly, ReductionSystem};
use crate::report::CertReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("DE-data failed validation ({})", .0.check)]
    ValidationFailed(Box<CertReport>),
    #[error("non-homogeneous: {0}")]
    NonHomogeneous(String),
    #[error(transparent)]
    Data(DataError),
}

/// `B` as a rewriting system over the base letters followed by `y1 < y2`.
#[derive(Clone, Debug)]
pub struct ExtensionBuild {
    data: DEData,
    system: Arc<ReductionSystem>,
    tags: Vec<RuleTag>,
}

/// Validates the data (homomorphism laws and the six constraints) and
/// assembles the rewriting system of the extension.
pub fn build(d: &DEData) -> Result<ExtensionBuild, BuildError> {
    for report in [d.validate_hom(), d.check_compatibility_formulas()] {
        if !report.passed() {
            return Err(BuildError::ValidationFailed(Box::new(report)));
        }
    }
    build_unchecked(d)
}

/// Assembles the rewriting system without validating the data first.
pub fn build_unchecked(d: &DEData) -> Result<ExtensionBuild, BuildError> {
    let (system, tags) = d.extension_system().map_err(|e| match e {
        DataError::NonHomogeneous(s) => BuildError::NonHomogeneous(s),
        other => BuildError::Data(other),
    })?;
    Ok(ExtensionBuild {
        data: d.clone(),
        system: Arc::new(system),
        tags,
    })
}

/// Associated graded data: δ and τ set to zero.
pub fn trim(d: &DEData) -> DEData {
    d.trimmed()
}

impl ExtensionBuild {
    pub fn data(&self) -> &DEData {
        &self.data
    }

    pub fn system(&self) -> &Arc<ReductionSystem> {
        &self.system
    }

    pub fn base(&self) -> &Arc<ReductionSystem> {
        self.data.base()
    }

    pub fn tags(&self) -> &[RuleTag] {
        &self.tags
    }

    pub fn y_letter(&self, i: usize) -> Letter {
        (self.data.alphabet().len() + i) as Letter
    }

    pub fn y(&self, i: usize) -> NcPoly {
        NcPoly::generator(self.system.alphabet(), self.y_letter(i), self.data.field())
    }

    fn dy(&self, i: usize) -> i64 {
        self.data.dy()[i] as i64
    }

    /// Base basis of degree `d`; empty for negative `d`.
    pub fn a_basis(&self, d: i64) -> Vec<Monomial> {
        if d < 0 {
            Vec::new()
        } else {
            self.base().irreducible_monomials(d as u32)
        }
    }

    fn one_poly(&self, m: &Monomial) -> NcPoly {
        NcPoly::monomial(m.clone(), self.data.field().one())
    }

    fn y_power(&self, word: &[usize]) -> NcPoly {
        let ab = self.system.alphabet();
        let letters: Vec<Letter> = word.iter().map(|&i| self.y_letter(i)).collect();
        NcPoly::word(ab, &letters, self.data.field())
    }

    /// Matrix whose columns are the coordinates of `polys` in `B_d`.
    fn columns(&self, d: u32, polys: &[NcPoly]) -> ExactMatrix {
        let basis = self.system.basis(d);
        let field = self.data.field();
        let cols: Vec<Vec<Scalar>> = polys
            .iter()
            .map(|p| {
                basis
                    .coords(&self.system.normal_form(p), field)
                    .expect("normal form lies in the degree basis")
            })
            .collect();
        ExactMatrix::from_columns(field, basis.len(), &cols)
    }

    /// Confluence to `max_degree`, plus: the irreducible words of each
    /// degree are exactly `m·y1^a·y2^b` with `m` a base basis word.
    pub fn certify_pbw(&self, max_degree: u32) -> CertReport {
        let ab = self.system.alphabet();
        let mut report = CertReport::new("pbw basis").with_bound(max_degree);
        report.absorb(check_confluence(&self.system, max_degree));
        let mut counts = Vec::new();
        for d in 0..=max_degree {
            let mut expected: Vec<Monomial> = Vec::new();
            let mut a = 0;
            while a * self.dy(0) <= d as i64 {
                let mut b = 0;
                loop {
                    let rest = d as i64 - a * self.dy(0) - b * self.dy(1);
                    if rest < 0 {
                        break;
                    }
                    let mut word = vec![0usize; a as usize];
                    word.extend(vec![1usize; b as usize]);
                    let ys = ab.monomial(
                        &word.iter().map(|&i| self.y_letter(i)).collect::<Vec<_>>(),
                    );
                    for m in self.a_basis(rest) {
                        expected.push(m.concat(&ys));
                    }
                    b += 1;
                }
                a += 1;
            }
            expected.sort_unstable_by(|x, y| y.cmp(x));
            let found = self.system.irreducible_monomials(d);
            counts.push(found.len());
            if found != expected {
                let missing: Vec<String> = expected
                    .iter()
                    .filter(|m| !found.contains(m))
                    .map(|m| ab.render(m))
                    .collect();
                let extra: Vec<String> = found
                    .iter()
                    .filter(|m| !expected.contains(m))
                    .map(|m| ab.render(m))
                    .collect();
                report.fail(
                    format!("degree {d}"),
                    format!("missing {missing:?}; unexpected {extra:?}"),
                );
            }
        }
        report.fact("counts", &counts);
        report
    }

    /// Counted Hilbert function of `B` against `H_A / ((1−t^{dy1})(1−t^{dy2}))`.
    pub fn certify_hilbert(&self, max_degree: u32) -> CertReport {
        let hb = self.system.hilbert_function(max_degree);
        let ha = self.base().hilbert_function(max_degree);
        let [d1, d2] = self.data.dy();
        let mut report = series_quotient_check(&ha, d1, d2, &hb);
        report.check = "hilbert series".into();
        report.fact("base", &ha);
        report
    }

    fn free_rank3_degree(&self, d: u32, report: &mut CertReport) -> usize {
        let di = d as i64;
        let (y1, y2) = (self.y(0), self.y(1));
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (shift, y) in [(self.dy(0), &y1), (self.dy(1), &y2)] {
            for m in self.a_basis(di - shift) {
                let a = self.one_poly(&m);
                left.push(y.mul(&a));
                right.push(a.mul(y));
            }
        }
        for m in self.a_basis(di) {
            left.push(self.one_poly(&m));
            right.push(self.one_poly(&m));
        }
        let dim = left.len();
        if dim == 0 {
            return 0;
        }
        let l = self.columns(d, &left);
        let r = self.columns(d, &right);
        let rank_l = l.rank();
        let rank_r = r.rank();
        let joint = l.hconcat(&r).expect("same row count").rank();
        if rank_l != dim {
            report.fail(
                format!("degree {d}"),
                format!("y1*A + y2*A + A has rank {rank_l}, expected {dim}"),
            );
        }
        if rank_r != dim {
            report.fail(
                format!("degree {d}"),
                format!("A*y1 + A*y2 + A has rank {rank_r}, expected {dim}"),
            );
        }
        if joint != rank_l || joint != rank_r {
            report.fail(
                format!("degree {d}"),
                format!("the two spans differ (joint rank {joint}, y*A {rank_l}, A*y {rank_r})"),
            );
        }
        dim
    }

    /// Degree-wise: `A·y1 + A·y2 + A = y1·A + y2·A + A`, free of rank 3 on
    /// both sides.
    pub fn certify_free_rank3(&self, max_degree: u32) -> CertReport {
        let mut report = CertReport::new("free of rank 3 on both sides").with_bound(max_degree);
        let dims: Vec<usize> = (0..=max_degree)
            .map(|d| self.free_rank3_degree(d, &mut report))
            .collect();
        report.fact("dimensions", dims);
        report
    }

    /// Inverse of σ read off from `r·y_i = y1·φ_1i(r) + y2·φ_2i(r) + δ'_i(r)`
    /// in `B`, by solving for each generator.
    pub fn extract_phi(&self) -> Result<PhiMap, String> {
        let field = self.data.field();
        let base_ab = self.data.alphabet();
        let mut images = Vec::new();
        for l in base_ab.letters() {
            let x = NcPoly::generator(base_ab, l, field);
            let e = base_ab.degree(l) as i64;
            let mut img: SigmaImage = Default::default();
            for i in 0..2 {
                let d = e + self.dy(i);
                let target = self.system.normal_form(&x.mul(&self.y(i)));
                let a1 = self.a_basis(d - self.dy(0));
                let a2 = self.a_basis(d - self.dy(1));
                let a0 = self.a_basis(d);
                let mut cols = Vec::new();
                cols.extend(a1.iter().map(|m| self.y(0).mul(&self.one_poly(m))));
                cols.extend(a2.iter().map(|m| self.y(1).mul(&self.one_poly(m))));
                cols.extend(a0.iter().map(|m| self.one_poly(m)));
                let mat = self.columns(d as u32, &cols);
                let rhs = self
                    .system
                    .basis(d as u32)
                    .coords(&target, field)
                    .expect("normal form");
                let sol = mat
                    .solve(&rhs)
                    .expect("dimensions agree")
                    .ok_or_else(|| {
                        format!(
                            "{}*y{} is not in y1*A + y2*A + A",
                            base_ab.name(l),
                            i + 1
                        )
                    })?;
                let combine = |basis: &[Monomial], coeffs: &[Scalar]| {
                    NcPoly::from_terms(basis.iter().cloned().zip(coeffs.iter().cloned()))
                };
                img[0][i] = combine(&a1, &sol[..a1.len()]);
                img[1][i] = combine(&a2, &sol[a1.len()..a1.len() + a2.len()]);
            }
            images.push(img);
        }
        Ok(PhiMap { images })
    }

    /// Whether the right span `{y2^a·y1^b·m}` is a basis of each degree,
    /// tested by rank and count.
    fn right_basis_degree(&self, d: u32, report: &mut CertReport) {
        let di = d as i64;
        let mut polys = Vec::new();
        let mut a = 0;
        while a * self.dy(1) <= di {
            let mut b = 0;
            while a * self.dy(1) + b * self.dy(0) <= di {
                let rest = di - a * self.dy(1) - b * self.dy(0);
                let mut word = vec![1usize; a as usize];
                word.extend(vec![0usize; b as usize]);
                let ys = self.y_power(&word);
                for m in self.a_basis(rest) {
                    polys.push(ys.mul(&self.one_poly(&m)));
                }
                b += 1;
            }
            a += 1;
        }
        let dim = self.system.basis(d).len();
        let rank = if polys.is_empty() { 0 } else { self.columns(d, &polys).rank() };
        if polys.len() != dim || rank != dim {
            report.fail(
                format!("degree {d}"),
                format!(
                    "{} right words of rank {rank}; the degree has dimension {dim}",
                    polys.len()
                ),
            );
        }
    }

    /// Solves `NF(y1·y2) = p12'·y2·y1 + p11'·y1² + y1·τ1' + y2·τ2' + τ0'`
    /// and checks the solution by substituting it back.
    fn left_form(&self, report: &mut CertReport) {
        let field = self.data.field();
        let ab = self.system.alphabet();
        let d = self.dy(0) + self.dy(1);
        let (y1, y2) = (self.y(0), self.y(1));
        let mut cols = vec![y2.mul(&y1)];
        let has_square = self.dy(0) == self.dy(1);
        if has_square {
            cols.push(y1.mul(&y1));
        }
        let t1 = self.a_basis(d - self.dy(0));
        let t2 = self.a_basis(d - self.dy(1));
        let t0 = self.a_basis(d);
        cols.extend(t1.iter().map(|m| y1.mul(&self.one_poly(m))));
        cols.extend(t2.iter().map(|m| y2.mul(&self.one_poly(m))));
        cols.extend(t0.iter().map(|m| self.one_poly(m)));
        let mat = self.columns(d as u32, &cols);
        let target = self.system.normal_form(&y1.mul(&y2));
        let rhs = self
            .system
            .basis(d as u32)
            .coords(&target, field)
            .expect("normal form");
        let Some(sol) = mat.solve(&rhs).expect("dimensions agree") else {
            report.fail("left form", "y1*y2 is not in the span of the left-form terms");
            return;
        };
        let mut k = 0;
        let mut take = |n: usize| {
            let s = sol[k..k + n].to_vec();
            k += n;
            s
        };
        let p12p = take(1)[0].clone();
        let p11p = if has_square { take(1)[0].clone() } else { field.zero() };
        let comb = |basis: &[Monomial], c: Vec<Scalar>| {
            NcPoly::from_terms(basis.iter().cloned().zip(c))
        };
        let tau1 = comb(&t1, take(t1.len()));
        let tau2 = comb(&t2, take(t2.len()));
        let tau0 = comb(&t0, take(t0.len()));
        let mut back = y2.mul(&y1).scale(&p12p);
        back = &back + &y1.mul(&y1).scale(&p11p);
        back = &back + &y1.mul(&tau1);
        back = &back + &y2.mul(&tau2);
        back = &back + &tau0;
        if self.system.normal_form(&back) != target {
            report.fail("left form", "substituting the coefficients back does not give y1*y2");
        }
        let product = &p12p * self.data.p12();
        if !product.is_one() {
            report.fail("p12*p12'", format!("equals {product}, expected 1"));
        }
        report.fact("p12_left", p12p.to_string());
        report.fact("p11_left", p11p.to_string());
        report.fact(
            "tau_left",
            vec![tau1.render(ab), tau2.render(ab), tau0.render(ab)],
        );
    }

    /// Double-extension status to `max_degree`: `p12 ≠ 0`, σ invertible,
    /// free of rank 3 on both sides, the right basis `y2^a·y1^b`, and the
    /// left form of the quadratic relation.
    pub fn certify_double(&self, max_degree: u32) -> CertReport {
        let mut report = CertReport::new("double extension").with_bound(max_degree);
        if self.data.p12().is_zero() {
            report.fail("p12 = 0", "a double extension needs p12 != 0");
            report.absorb(self.certify_free_rank3(max_degree));
            return report;
        }
        let phi = if self.data.p11().is_zero() {
            report.fact("phi_source", "closed formula through det sigma");
            match self.data.right_inverse_phi() {
                PhiOutcome::Phi(p) => Ok(p),
                PhiOutcome::Unsupported(s) | PhiOutcome::NotInvertible(s) => Err(s),
            }
        } else {
            report.fact("phi_source", "solved from r*y_i in the extension");
            self.extract_phi()
        };
        match phi {
            Ok(p) => {
                report.fact("phi", p.render(&self.data));
                report.absorb(self.data.verify_phi(&p, max_degree));
            }
            Err(reason) => report.fail("sigma is not invertible", reason),
        }
        report.absorb(self.certify_free_rank3(max_degree));
        let mut right = CertReport::new("right basis y2^a*y1^b").with_bound(max_degree);
        for d in 0..=max_degree {
            self.right_basis_degree(d, &mut right);
        }
        report.absorb(right);
        let mut left = CertReport::new("left form of the quadratic relation");
        self.left_form(&mut left);
        report.absorb(left);
        report
    }

    /// `B/(A≥1)` against `k⟨y1,y2⟩/(y2y1 − p12·y1y2 − p11·y1²)`, with the
    /// noetherian necessary condition `p12 ≠ 0` reported alongside.
    pub fn factor_ring_check(&self) -> CertReport {
        let ab = self.system.alphabet();
        let n = self.data.alphabet().len();
        let mut report = CertReport::new("factor ring by the base augmentation ideal");
        let has_unit_entry = self
            .data
            .sigma()
            .iter()
            .flat_map(|s| s.iter().flatten())
            .any(|p| p.monomials().any(Monomial::is_one));
        if self.data.dy()[0] != self.data.dy()[1] && has_unit_entry {
            report.inconclusive(0, "sigma does not preserve the augmentation ideal");
            return report;
        }
        let y_only = |p: &NcPoly| {
            NcPoly::from_terms(
                p.terms()
                    .filter(|(m, _)| m.word().iter().all(|&l| l as usize >= n))
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        };
        let mut quotient = Vec::new();
        for rule in self.system.rules() {
            let lead_y_only = rule.lead.word().iter().all(|&l| l as usize >= n);
            let rhs = y_only(&rule.rhs);
            if lead_y_only {
                quotient.push((rule.lead.clone(), rhs));
            } else if !rhs.is_zero() {
                report.fail(
                    format!("rule {}", ab.render(&rule.lead)),
                    format!("leaves {} outside the ideal", rhs.render(ab)),
                );
            }
        }
        let (y1, y2) = (self.y(0), self.y(1));
        let expected = &y1.mul(&y2).scale(self.data.p12()) + &y1.mul(&y1).scale(self.data.p11());
        let lead = ab.monomial(&[self.y_letter(1), self.y_letter(0)]);
        let rendered: Vec<String> = quotient
            .iter()
            .map(|(l, r)| format!("{} = {}", ab.render(l), r.render(ab)))
            .collect();
        report.fact("quotient_relations", &rendered);
        if quotient != vec![(lead, expected.clone())] {
            report.fail(
                "quotient",
                format!("expected y2*y1 = {}", expected.render(ab)),
            );
        }
        if self.data.p12().is_zero() {
            report.fact("noetherian_necessary_condition", "fails (p12 = 0)");
            report.note("warning: fails the noetherian necessary condition p12 != 0");
        } else {
            report.fact("noetherian_necessary_condition", "holds (p12 != 0)");
        }
        report
    }

    /// The necessary condition `p12 ≠ 0` for `B` to be noetherian.
    pub fn noetherian_condition_check(&self) -> CertReport {
        let mut report = CertReport::new("noetherian necessary condition");
        if self.data.p12().is_zero() {
            let ab = self.system.alphabet();
            let y1 = self.y(0);
            let rhs = y1.mul(&y1).scale(self.data.p11());
            report.fail(
                "p12 = 0",
                format!(
                    "the factor ring by the base augmentation ideal has the single relation y2*y1 = {}",
                    rhs.render(ab)
                ),
            );
        }
        report
    }
}
