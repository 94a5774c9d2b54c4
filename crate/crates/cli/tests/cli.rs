use std::path::Path;

use dext_cli::{run_args, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dext(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_args(
        std::iter::once("dext").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

const BH_SESSION: &str = "\
# deformed plane with h = 2
field q
base {
  generators x1:1, x2:1
  relation x2*x1 + x1*x2
}
extension {
  p12 = -1
  sigma(x1) = [[2*x1 + 2*x2, 2*x1], [2*x2, 0]]
  sigma(x2) = [[0, 2*x1], [-2*x2, -2*x1 + 2*x2]]
}
options { max_degree = 4; checks = validate, pbw, check-double }
";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_builtin_deformed_plane() {
    let r = dext(&["validate", "--example", "Bh", "--param", "h=2"]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.stdout);
    assert_eq!(r.stdout.matches("[PASS]").count(), 3);
}

#[test]
fn det_sigma_images() {
    let r = dext(&["det-sigma", "--example", "Bh", "--param", "h=2"]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.stdout.contains(r#"images: ["x1 -> 4*x2","x2 -> -4*x1"]"#), "{}", r.stdout);
}

#[test]
fn double_check_fails_without_p12() {
    let r = dext(&["check-double", "--example", "trivial", "--param", "p12=0", "--max-degree", "3"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("witness p12 = 0"));
}

#[test]
fn session_file_checks_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let session = write(dir.path(), "bh.dext", BH_SESSION);
    let json = dir.path().join("out.json");
    let json_s = json.to_str().unwrap();
    let r = dext(&["checks", &session, "--json", json_s]);
    assert_eq!(r.code, EXIT_PASS, "{}{}", r.stdout, r.stderr);
    let first = std::fs::read_to_string(&json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["command"], "checks");
    assert_eq!(v["exit_code"], 0);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
    assert_eq!(reports[3]["bound"], 4);
    assert!(r.stderr.contains("time "));
    assert!(!first.contains("elapsed"));

    dext(&["checks", &session, "--json", json_s]);
    assert_eq!(std::fs::read_to_string(&json).unwrap(), first);
}

#[test]
fn failing_json_has_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let r = dext(&[
        "pbw",
        "--example",
        "B4",
        "--param",
        "a=1",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_FAIL);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 1);
    assert_eq!(v["reports"][0]["verdict"], "fail");
}

#[test]
fn examples_round_trip_through_session_text() {
    let dir = tempfile::tempdir().unwrap();
    for (name, field, params) in [
        ("Bh", "q", vec!["--param", "h=3"]),
        ("B1", "q", vec!["--param", "c=5"]),
        ("B2", "fp:7", vec!["--param", "c=2"]),
        ("B3", "q", vec![]),
        ("B4", "q", vec!["--param", "b=1/2"]),
        ("trivial", "q", vec!["--param", "p11=1"]),
        ("rightonly", "q", vec![]),
    ] {
        let with = |cmd: &str| {
            let mut args = vec![cmd, "--example", name, "--field", field];
            args.extend(&params);
            dext(&args)
        };
        let r = with("example");
        assert_eq!(r.code, EXIT_PASS, "{name}: {}", r.stderr);
        let path = write(dir.path(), &format!("{name}.dext"), &r.stdout);
        let from_file = dext(&["build", &path]);
        assert_eq!(from_file.stdout, with("build").stdout, "{name}");
        assert_eq!(from_file.code, EXIT_PASS, "{name}: {}", from_file.stdout);
    }
}

#[test]
fn normal_commands() {
    let r = dext(&["normal", "--example", "Bh", "--element", "x1*x2"]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.stdout.contains(r#""y1","-4*y1""#), "{}", r.stdout);
    let r = dext(&["normal", "--example", "Bh", "--element", "x1"]);
    assert_eq!(r.code, EXIT_FAIL);
    let r = dext(&["normal", "--example", "Bh", "--field", "fp:5", "--enumerate", "--degree", "1"]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.stdout.contains("points: 156"));
    let r = dext(&["normal", "--example", "Bh", "--enumerate", "--degree", "1"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("[UNSUPPORTED]"));
    let r = dext(&["normal", "--example", "Bh"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn order_subdims_koszul_and_sequences() {
    let r = dext(&["order", "--example", "Bh", "--param", "h=1"]);
    assert!(r.stdout.contains("order: 4"));
    let r = dext(&["order", "--example", "Bh", "--param", "h=2"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("[INCONCLUSIVE]"));
    let r = dext(&[
        "subdims", "--example", "Bh", "--element", "x1", "--element", "x2", "--max-degree", "3",
    ]);
    assert!(r.stdout.contains("dimensions: [1,2,3,4]"), "{}", r.stdout);
    let r = dext(&["koszul", "--example", "Bh"]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.stdout.contains("dual_hilbert: [1,4,6,4,1]"));
    for cmd in ["exact-seq", "twist"] {
        let r = dext(&[cmd, "--example", "Bh", "--max-degree", "3"]);
        assert_eq!(r.code, EXIT_PASS, "{cmd}: {}", r.stdout);
    }
    let r = dext(&["exact-seq", "--example", "B1", "--param", "c=1"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("not trimmed"));
    let r = dext(&["exact-seq", "--example", "B1", "--param", "c=1", "--trim", "--max-degree", "3"]);
    assert_eq!(r.code, EXIT_PASS);
    let r = dext(&["factor-ring", "--example", "trivial", "--param", "p12=0"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("noetherian"));
    let r = dext(&["invert-sigma", "--example", "B4", "--max-degree", "3"]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.stdout);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(dext(&["pbw"]).code, EXIT_USAGE);
    assert_eq!(dext(&[]).code, EXIT_USAGE);
    assert_eq!(dext(&["pbw", "--example", "B9"]).code, EXIT_USAGE);
    assert_eq!(dext(&["pbw", "--example", "B1", "--param", "b=1"]).code, EXIT_USAGE);
    assert_eq!(dext(&["pbw", "--field", "fp:8", "--example", "Bh"]).code, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.dext", "base {\n  relation x1 +* x2\n}\n");
    let r = dext(&["validate", &bad]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("2:16: syntax error"), "{}", r.stderr);
    let missing = dext(&["validate", "/nonexistent/file.dext"]);
    assert_eq!(missing.code, EXIT_USAGE);
}
