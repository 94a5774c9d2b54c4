//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with a custom harness so the lines are always printed. The exit
//! status is nonzero when a criterion fails, except for criteria listed in
//! [`UNATTAINABLE`], whose failure is expected and explained in the output.
//! Set `DEXT_ACCEPTANCE_STRICT=1` to make those fail the run as well.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::*;
use dext_core::analysis::*;
use dext_core::dedata::{invert_endo, DEData, Inversion, PhiOutcome};
use dext_core::exactla::Field;
use dext_core::extension::{build, build_unchecked, trim, BuildError, ExtensionBuild};
use dext_core::ncalg::NcPoly;
use dext_core::report::CertReport;
use dext_core::session::parse_poly;

/// Criteria that cannot pass as stated, with the reason printed on failure.
const UNATTAINABLE: &[(u32, &str)] = &[(
    2,
    "B4(1,1,1) is not a valid extension: resolving y2*y1*x leaves (a - 2)*b*x^3, \
     so the displayed relations are confluent only at a = 2 (B4(2,1,1) is checked \
     below for comparison)",
)];

/// Result of one sub-check inside a criterion.
struct Line {
    ok: bool,
    text: String,
}

#[derive(Default)]
struct Criterion {
    lines: Vec<Line>,
    info: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, text: impl Into<String>) {
        self.lines.push(Line { ok, text: text.into() });
    }

    fn report(&mut self, r: &CertReport, what: &str) {
        let mut text = format!("{what}: {}", r.verdict);
        if let Some(w) = r.witnesses.first() {
            text.push_str(&format!(" ({}: {})", w.label, w.detail));
        }
        self.check(r.passed(), text);
    }

    fn info(&mut self, text: impl Into<String>) {
        self.info.push(text.into());
    }

    fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }
}

fn q() -> Field {
    Field::Rational
}

fn fp(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn bh(field: Field, h: i64) -> ExtensionBuild {
    build(&example("Bh", field, &[("h", h)])).unwrap()
}

fn poly(b: &ExtensionBuild, text: &str) -> NcPoly {
    parse_poly(text, b.system().alphabet(), b.data().field()).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of `(1−t)^{−n}` up to `t^max`.
fn free_series(n: u64, max: u64) -> Vec<u64> {
    (0..=max).map(|d| binomial(d + n - 1, n - 1)).collect()
}

fn three_checks(d: &DEData) -> [CertReport; 3] {
    [
        d.validate_hom(),
        d.check_compatibility_formulas(),
        d.check_compatibility_by_ambiguity(),
    ]
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    for field in [q(), fp(7)] {
        let d = example("Bh", field, &[("h", 2)]);
        for r in three_checks(&d) {
            c.report(&r, &format!("B(2) over {field}, {}", r.check));
        }
        let ab = d.alphabet();
        let mut mutations = 0;
        let mut undetected = Vec::new();
        for g in ab.letters() {
            for i in 0..2 {
                for j in 0..2 {
                    for m in d.base().irreducible_monomials(1) {
                        let bumped = &d.sigma()[g as usize][i][j] + &NcPoly::monomial(m.clone(), field.one());
                        let mutated = d.with_sigma_entry(g as usize, i, j, bumped).unwrap();
                        mutations += 1;
                        if three_checks(&mutated).iter().all(CertReport::passed) {
                            undetected.push(format!(
                                "sigma{}{}({}) + {}",
                                i + 1,
                                j + 1,
                                ab.name(g),
                                ab.render(&m)
                            ));
                        }
                    }
                }
            }
        }
        c.check(
            undetected.is_empty(),
            format!("over {field}: {mutations} single-coefficient mutations, undetected {undetected:?}"),
        );
    }
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    let b = bh(q(), 2);
    let expected4 = free_series(4, 6);
    c.report(&b.certify_pbw(6), "B(2) pbw to degree 6");
    let h = b.certify_hilbert(6);
    c.report(&h, "B(2) hilbert to degree 6");
    let counts = b.system().hilbert_function(6);
    c.check(
        counts.iter().map(|&n| n as u64).eq(expected4.iter().copied()),
        format!("B(2) counts {counts:?} against (1-t)^-4 = {expected4:?}"),
    );

    let expected3 = free_series(3, 5);
    // (builtin, label, parameters)
    let cases: [(&str, &str, &[(&str, i64)]); 4] = [
        ("B1", "B1(2,1,3,0)", &[("p", 2), ("a", 1), ("b", 3), ("c", 0)]),
        ("B2", "B2(1,1,0)", &[("a", 1), ("b", 1), ("c", 0)]),
        ("B3", "B3(2)", &[("a", 2)]),
        ("B4", "B4(1,1,1)", &[("a", 1), ("b", 1), ("c", 1)]),
    ];
    for (name, label, params) in cases {
        let d = example(name, q(), params);
        let b = match build(&d) {
            Ok(b) => b,
            Err(BuildError::ValidationFailed(r)) => {
                c.report(&r, &format!("{label} validation"));
                if let Some(w) = d.check_compatibility_by_ambiguity().witnesses.first() {
                    c.info(format!("{label} unresolved ambiguity {}: {}", w.label, w.detail));
                }
                build_unchecked(&d).unwrap()
            }
            Err(e) => {
                c.check(false, format!("{label} build: {e}"));
                continue;
            }
        };
        c.report(&b.certify_pbw(5), &format!("{label} pbw to degree 5"));
        c.report(&b.certify_hilbert(5), &format!("{label} hilbert to degree 5"));
        let counts = b.system().hilbert_function(5);
        c.check(
            counts.iter().map(|&n| n as u64).eq(expected3.iter().copied()),
            format!("{label} irreducible-word counts {counts:?} against (1-t)^-3 = {expected3:?}"),
        );
    }

    let b4 = build(&example("B4", q(), &[("a", 2), ("b", 1), ("c", 1)])).unwrap();
    let (pbw, hil) = (b4.certify_pbw(5), b4.certify_hilbert(5));
    c.info(format!(
        "for comparison B4(2,1,1): pbw {}, hilbert {}, counts {:?}",
        pbw.verdict,
        hil.verdict,
        b4.system().hilbert_function(5)
    ));
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    for h in [1i64, 2, 3] {
        let d = example("Bh", q(), &[("h", h)]);
        let det = d.det_sigma(4).unwrap();
        let ab = d.alphabet();
        let want: Vec<NcPoly> = [format!("{}*x2", h * h), format!("-{}*x1", h * h)]
            .iter()
            .map(|t| parse_poly(t, ab, q()).unwrap())
            .collect();
        let got: Vec<NcPoly> = det.map.images.iter().map(|p| d.base().normal_form(p)).collect();
        c.check(
            got == want,
            format!("h = {h}: det sigma {:?}, expected x1 -> {h}^2*x2, x2 -> -{h}^2*x1", det.map.render(d.base())),
        );
        c.report(&det.report, &format!("h = {h}: multiplicativity to degree 4"));
        let variants = d.naive_det_variants(&det.map);
        for v in &variants[..2] {
            c.check(!v.equals_det, format!("h = {h}: naive {} equals det sigma: {}", v.name, v.equals_det));
        }
    }
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    let b = bh(q(), 2);
    let d = b.data();
    let det = d.det_sigma(2).unwrap().map;
    match invert_endo(&det, b.base()) {
        Inversion::Inverse(inv) => c.check(true, format!("det sigma inverse {:?}", inv.render(b.base()))),
        other => c.check(false, format!("det sigma inversion: {other:?}")),
    }
    match d.right_inverse_phi() {
        PhiOutcome::Phi(phi) => c.report(&d.verify_phi(&phi, 5), "phi verified to degree 5"),
        other => c.check(false, format!("right_inverse_phi: {other:?}")),
    }
    c.report(&b.certify_free_rank3(5), "free of rank 3 to degree 5");
    let double = b.certify_double(5);
    c.report(&double, "double extension to degree 5");
    let p12_left = double.find_fact("p12_left").and_then(|v| v.as_str()).unwrap_or("missing");
    c.check(p12_left == "-1", format!("p12' = {p12_left}, expected -1"));
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    let b = build(&trim(&example("Bh", q(), &[("h", 2)]))).unwrap();
    let seq = exact_sequence_check(&b, 5).unwrap();
    c.report(&seq, "exact sequence to degree 5");
    // b_d = dim B_d = C(d+3, 3), a_d = dim A_d = d + 1.
    let bd = |d: i64| if d < 0 { 0 } else { binomial(d as u64 + 3, 3) };
    let want: Vec<String> = (0..=5i64)
        .map(|d| format!("{} - {} + {} = {}", bd(d - 2), 2 * bd(d - 1), bd(d), d + 1))
        .collect();
    let got: Vec<String> = seq.facts["dimension_identity"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    c.check(got == want, format!("dimension identity {got:?}"));
    c.report(&g_twist_check(&b, 5).unwrap(), "twisted bimodule map to degree 5");
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    for h in [2i64, 3] {
        let b = bh(q(), h);
        let ab = b.system().alphabet().clone();
        let y1 = ab.letter("y1").unwrap();
        let s = h * h;
        for (z, want) in [("x1*x2", format!("-{s}*y1")), ("x1*x1 + x2*x2", format!("{s}*y1"))] {
            match check_normal(&b, &poly(&b, z)).unwrap() {
                Some(cert) => {
                    let m = cert.multiplier(y1).unwrap().render(&ab);
                    c.check(
                        cert.verify(&b) && m == want,
                        format!("h = {h}: {z} normal, y1 -> {m}, expected {want}"),
                    );
                }
                None => c.check(false, format!("h = {h}: {z} not normal")),
            }
        }
    }
    let b = bh(fp(5), 2);
    // Projective 3-space over 𝔽_5.
    let oracle = (5u64.pow(4) - 1) / 4;
    match enumerate_normal(&b, 1) {
        Enumeration::Complete { points, normal } => c.check(
            points == oracle && normal.is_empty(),
            format!("degree 1 over F_5: {points} points (expected {oracle}), {} normal", normal.len()),
        ),
        Enumeration::Unsupported(s) => c.check(false, s),
    }
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    for (field, h, want) in [(q(), 1, Some(4)), (q(), 2, None), (fp(7), 3, Some(12))] {
        let b = bh(field, h);
        let det = b.data().det_sigma(2).unwrap().map;
        let order = endo_order(&det, b.base(), 100);
        let show = |o: Option<u32>| o.map_or("exceeds bound 100".to_string(), |n| n.to_string());
        c.check(
            order == want,
            format!("h = {h} over {field}: order {}, expected {}", show(order), show(want)),
        );
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    let b = bh(fp(5), 2);
    let mut smallest = usize::MAX;
    let mut bad = Vec::new();
    for a in 0..3 {
        for bb in 0..3 {
            for cc in 0..3 {
                let z: Vec<NcPoly> = [
                    format!("x1 + {a}*y2"),
                    format!("x2 + {bb}*y2"),
                    format!("y1 + {cc}*y2"),
                ]
                .iter()
                .map(|t| poly(&b, t))
                .collect();
                let dims = subalgebra_dims(&b, &z, 2).unwrap();
                smallest = smallest.min(dims[2]);
                if dims[2] < 7 {
                    bad.push((a, bb, cc, dims[2]));
                }
            }
        }
    }
    c.check(
        bad.is_empty(),
        format!("27 triples over F_5: smallest degree-2 dimension {smallest}, below 7: {bad:?}"),
    );
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    let d = example("trivial", q(), &[("p12", 0)]);
    let b = match build(&d) {
        Ok(b) => b,
        Err(e) => {
            c.check(false, format!("builds as a right double extension: {e}"));
            return c;
        }
    };
    c.check(true, "builds as a right double extension");
    c.report(&b.certify_pbw(5), "pbw to degree 5");
    c.report(&b.certify_hilbert(5), "hilbert to degree 5");
    for r in [b.certify_double(3), b.noetherian_condition_check()] {
        let w = r.witnesses.first().map(|w| format!("{}: {}", w.label, w.detail));
        c.check(
            !r.passed() && w.is_some(),
            format!("{} fails with witness {}", r.check, w.unwrap_or_default()),
        );
    }
    c
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn criterion_10() -> Criterion {
    use proptest::strategy::{Strategy, ValueTree};
    let mut c = Criterion::default();
    let mut run = |name: &str, result: Result<(), String>| {
        c.check(result.is_ok(), format!("{name}: {}", result.err().unwrap_or_else(|| "ok".into())));
    };

    run(
        "order compatible with concatenation (200 cases)",
        runner(200)
            .run(&(word(4, 4), word(4, 4), word(4, 4), word(4, 4)), |(u, v, a, b)| {
                order_compatible(&u, &v, &a, &b)
            })
            .map_err(|e| e.to_string()),
    );
    run(
        "normal form idempotent and multiplicative (200 cases)",
        runner(200)
            .run(&(0..MUTABLE, terms(4), terms(4)), |(w, p, q)| normal_form_laws(w, p, q))
            .map_err(|e| e.to_string()),
    );
    run(
        "sigma hat multiplicative on words of degree <= 5 (200 cases)",
        runner(200)
            .run(&(0..MUTABLE, word_pair()), |(w, (u, v))| sigma_hat_multiplicative(w, &u, &v))
            .map_err(|e| e.to_string()),
    );

    let mut builtins_ok = true;
    for d in catalog() {
        builtins_ok &= routes_agree(&d).is_ok_and(|compatible| compatible);
    }
    c.check(builtins_ok, format!("both routes pass on all {} builtin configurations", catalog().len()));

    let mut gen = runner(50);
    let strategy = mutation();
    let mut broken = 0;
    let mut disagreements = Vec::new();
    for _ in 0..50 {
        let m = strategy
            .new_tree(&mut gen)
            .unwrap()
            .current();
        match mutation_agrees(&m) {
            Ok(compatible) => broken += usize::from(!compatible),
            Err(e) => disagreements.push(format!("{m:?}: {e}")),
        }
    }
    c.check(
        disagreements.is_empty(),
        format!("50 random mutations, {broken} break compatibility, route disagreements {disagreements:?}"),
    );
    c
}

fn main() -> ExitCode {
    let strict = std::env::var("DEXT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    type Run = fn() -> Criterion;
    let criteria: [(u32, &str, Run); 10] = [
        (1, "B(h) validation and mutation detection", criterion_1),
        (2, "PBW basis and Hilbert series", criterion_2),
        (3, "det sigma", criterion_3),
        (4, "invertibility chain", criterion_4),
        (5, "exact sequence", criterion_5),
        (6, "normal elements", criterion_6),
        (7, "order of det sigma", criterion_7),
        (8, "subalgebra growth", criterion_8),
        (9, "negative controls", criterion_9),
        (10, "property suites", criterion_10),
    ];
    let mut unexpected = 0;
    let total = Instant::now();
    for (n, title, f) in criteria {
        let start = Instant::now();
        let c = f();
        let passed = c.passed();
        let known = UNATTAINABLE.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n}: {} - {title} ({:.2}s)",
            if passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for l in &c.lines {
            println!("    [{}] {}", if l.ok { "ok" } else { "FAILED" }, l.text);
        }
        for i in &c.info {
            println!("    note: {i}");
        }
        match (passed, known) {
            (false, Some((_, why))) => {
                println!("    unattainable as stated: {why}");
                if strict {
                    unexpected += 1;
                }
            }
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("    listed as unattainable but passed; update UNATTAINABLE");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    println!("acceptance: {:.2}s total", total.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
