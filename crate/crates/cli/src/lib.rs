//! Command dispatch for the `dext` binary.
//!
//! Exit codes: 0 when every report passes, 1 when any report does not, 2 for
//! usage, parse and input errors, 3 for internal errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use dext_core::analysis::{self, AnalysisError, Enumeration};
use dext_core::dedata::{invert_endo, DEData, Inversion, PhiOutcome};
use dext_core::exactla::Field;
use dext_core::extension::{build, trim, BuildError, ExtensionBuild};
use dext_core::ncalg::NcPoly;
use dext_core::report::CertReport;
use dext_core::session::{parse_poly, render_data, Session, SessionError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

const DEFAULT_MAX_DEGREE: u32 = 5;

#[derive(Parser, Debug)]
#[command(name = "dext", version, about = "Build and certify double Ore extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Session file; omit when using --example.
    #[arg(global = true)]
    pub session: Option<PathBuf>,
    /// Ground field: `q` or `fp:<prime>`.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Degree bound for certifications (default 5, or the session's option).
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Also write the reports as JSON to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Use a builtin example instead of a session file.
    #[arg(long, global = true, visible_alias = "name")]
    pub example: Option<String>,
    /// Example parameter `name=value`; repeatable.
    #[arg(long = "param", global = true, visible_alias = "params")]
    pub params: Vec<String>,
    /// Replace delta and tau by zero before running the command.
    #[arg(long, global = true)]
    pub trim: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Homomorphism laws and the six compatibility constraints, both routes.
    Validate,
    /// Validate and print the rewriting system of the extension.
    Build,
    /// Confluence and the expected irreducible words.
    Pbw,
    /// Counted Hilbert function against the product formula.
    Hilbert,
    /// det sigma, its checks, and the naive composition variants.
    DetSigma,
    /// Invert det sigma and certify the inverse of sigma.
    InvertSigma,
    /// Double-extension status and the left form of the quadratic relation.
    CheckDouble,
    /// Degree-wise exactness of the four-term sequence (trimmed data).
    ExactSeq,
    /// Twisted bimodule property of the first map (trimmed data).
    Twist,
    /// Factor ring by the base augmentation ideal.
    FactorRing,
    /// Normality of one element, or exhaustive search over a finite field.
    Normal {
        /// Homogeneous element to test, e.g. `x1*x2`
        #[arg(long)]
        element: Option<String>,
        /// Test every projective point of one degree (finite fields only)
        #[arg(long)]
        enumerate: bool,
        /// Degree searched by --enumerate
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Order of det sigma.
    Order {
        /// Largest power tried
        #[arg(long, default_value_t = 100)]
        max: u32,
    },
    /// Per-degree dimensions of the subalgebra generated by the elements.
    Subdims {
        /// Generator of the subalgebra; repeatable
        #[arg(long = "element", required = true)]
        elements: Vec<String>,
    },
    /// Numeric Koszul identity against the quadratic dual.
    Koszul,
    /// Print a builtin example as a session file.
    Example,
    /// Run the checks listed in the session's options block.
    Checks,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Build => "build",
            Command::Pbw => "pbw",
            Command::Hilbert => "hilbert",
            Command::DetSigma => "det-sigma",
            Command::InvertSigma => "invert-sigma",
            Command::CheckDouble => "check-double",
            Command::ExactSeq => "exact-seq",
            Command::Twist => "twist",
            Command::FactorRing => "factor-ring",
            Command::Normal { .. } => "normal",
            Command::Order { .. } => "order",
            Command::Subdims { .. } => "subdims",
            Command::Koszul => "koszul",
            Command::Example => "example",
            Command::Checks => "checks",
        }
    }

    /// Commands addressable from a session's `checks` option.
    fn from_check_name(name: &str) -> Option<Command> {
        Some(match name {
            "validate" => Command::Validate,
            "build" => Command::Build,
            "pbw" => Command::Pbw,
            "hilbert" => Command::Hilbert,
            "det-sigma" => Command::DetSigma,
            "invert-sigma" => Command::InvertSigma,
            "check-double" => Command::CheckDouble,
            "exact-seq" => Command::ExactSeq,
            "twist" => Command::Twist,
            "factor-ring" => Command::FactorRing,
            "koszul" => Command::Koszul,
            "order" => Command::Order { max: 100 },
            _ => return None,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

/// What a run produced: the reports, plain text to print, and timings kept
/// apart from the reports so that they stay byte-stable.
#[derive(Debug, Default)]
pub struct Outcome {
    pub reports: Vec<CertReport>,
    pub text: Vec<String>,
    pub timings: Vec<(String, Duration)>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().all(CertReport::passed) {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    fn push(&mut self, report: CertReport) {
        self.timings
            .push((report.check.clone(), report.elapsed.unwrap_or_default()));
        self.reports.push(report);
    }
}

#[derive(Serialize)]
struct JsonOut<'a> {
    command: &'a str,
    exit_code: i32,
    reports: &'a [CertReport],
}

/// Input resolved from a session file or a builtin example.
struct Input {
    data: DEData,
    max_degree: u32,
    checks: Vec<String>,
}

fn load(cli: &Cli) -> Result<Input, CliError> {
    let mut checks = Vec::new();
    let mut session_degree = None;
    let data = match (&cli.example, &cli.session) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("give either a session file or --example, not both".into()))
        }
        (Some(name), None) => {
            let field = cli.field.unwrap_or(Field::Rational);
            let params = analysis::parse_params(&cli.params, field)?;
            analysis::builtin(name, &params, field)?.data
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let session = Session::from_text(&text, cli.field)?;
            session_degree = session.options.max_degree;
            checks = session.options.checks.clone();
            session.data.ok_or_else(|| {
                CliError::Usage(format!("{} has no extension block", path.display()))
            })?
        }
        (None, None) => return Err(CliError::Usage("give a session file or --example NAME".into())),
    };
    let data = if cli.trim { trim(&data) } else { data };
    Ok(Input {
        data,
        max_degree: cli.max_degree.or(session_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        checks,
    })
}

/// Builds the extension; a validation failure becomes a failing report.
fn extension(data: &DEData, out: &mut Outcome) -> Result<Option<ExtensionBuild>, CliError> {
    match build(data) {
        Ok(b) => Ok(Some(b)),
        Err(BuildError::ValidationFailed(report)) => {
            let mut r = CertReport::new("build");
            r.absorb(*report);
            out.push(r);
            Ok(None)
        }
        Err(e) => Err(AnalysisError::from(e).into()),
    }
}

fn timed(start: Instant, report: CertReport) -> CertReport {
    report.timed(start)
}

fn element(b: &ExtensionBuild, text: &str) -> Result<NcPoly, CliError> {
    Ok(parse_poly(text, b.system().alphabet(), b.data().field())?)
}

fn run_command(cmd: &Command, input: &Input, out: &mut Outcome) -> Result<(), CliError> {
    let data = &input.data;
    let max = input.max_degree;
    let start = Instant::now();
    match cmd {
        Command::Validate => {
            for r in [
                data.validate_hom(),
                data.check_compatibility_formulas(),
                data.check_compatibility_by_ambiguity(),
            ] {
                out.push(timed(start, r));
            }
        }
        Command::DetSigma => match data.det_sigma(max.min(4)) {
            Ok(det) => {
                let mut r = det.report;
                r.fact("images", det.map.render(data.base()));
                out.push(timed(start, r));
                out.push(timed(start, data.naive_det_report(&det.map)));
            }
            Err(e) => {
                let mut r = CertReport::new("det sigma");
                r.fail("det sigma", e.to_string());
                out.push(r);
            }
        },
        Command::Example => {
            out.text.push(render_data(data));
        }
        Command::Checks => {
            if input.checks.is_empty() {
                return Err(CliError::Usage("the session lists no checks".into()));
            }
            for name in &input.checks {
                let sub = Command::from_check_name(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown check `{name}`")))?;
                run_command(&sub, input, out)?;
            }
        }
        Command::Koszul => {
            let Some(b) = extension(data, out)? else { return Ok(()) };
            out.push(timed(start, analysis::koszul_numeric_check(&b, max)?));
        }
        _ => {
            let Some(b) = extension(data, out)? else { return Ok(()) };
            run_on_extension(cmd, &b, max, out)?;
        }
    }
    Ok(())
}

fn run_on_extension(cmd: &Command, b: &ExtensionBuild, max: u32, out: &mut Outcome) -> Result<(), CliError> {
    let data = b.data();
    let start = Instant::now();
    let report = match cmd {
        Command::Build => {
            let ab = b.system().alphabet();
            let mut r = CertReport::new("build");
            let rules: Vec<String> = b.system().rules().iter().map(|x| x.render(ab)).collect();
            r.fact("rules", rules);
            r.fact("tags", b.tags());
            r
        }
        Command::Pbw => b.certify_pbw(max),
        Command::Hilbert => {
            let mut r = b.certify_pbw(max);
            r.check = "pbw basis (prerequisite)".into();
            let mut h = b.certify_hilbert(max);
            h.absorb(r);
            h
        }
        Command::InvertSigma => {
            let mut r = CertReport::new("invertibility of sigma").with_bound(max);
            match data.det_sigma(max.min(4)) {
                Ok(det) => {
                    let mut inv = CertReport::new("inverse of det sigma");
                    match invert_endo(&det.map, data.base()) {
                        Inversion::Inverse(e) => inv.fact("inverse", e.render(data.base())),
                        Inversion::NotInvertible { degree } => {
                            inv.fail(format!("degree {degree}"), "det sigma is not bijective")
                        }
                        Inversion::Uncertified(why) => inv.inconclusive(0, why),
                    }
                    r.absorb(inv);
                }
                Err(e) => r.fail("det sigma", e.to_string()),
            }
            let phi = if data.p11().is_zero() {
                match data.right_inverse_phi() {
                    PhiOutcome::Phi(p) => Ok(p),
                    PhiOutcome::Unsupported(s) | PhiOutcome::NotInvertible(s) => Err(s),
                }
            } else {
                b.extract_phi()
            };
            match phi {
                Ok(p) => {
                    r.fact("phi", p.render(data));
                    r.absorb(data.verify_phi(&p, max));
                }
                Err(why) => r.fail("phi", why),
            }
            r
        }
        Command::CheckDouble => b.certify_double(max),
        Command::ExactSeq => analysis::exact_sequence_check(b, max)?,
        Command::Twist => analysis::g_twist_check(b, max)?,
        Command::FactorRing => {
            let mut r = b.factor_ring_check();
            r.absorb(b.noetherian_condition_check());
            r
        }
        Command::Normal {
            element: Some(text),
            enumerate: false,
            ..
        } => {
            let z = element(b, text)?;
            let mut r = CertReport::new("normal element");
            r.fact("element", z.render(b.system().alphabet()));
            match analysis::check_normal(b, &z)? {
                Some(cert) => r.fact("certificate", cert.render(b)),
                None => r.fail(z.render(b.system().alphabet()), "not normal"),
            }
            r
        }
        Command::Normal {
            element: None,
            enumerate: true,
            degree,
        } => {
            let d = degree.ok_or_else(|| CliError::Usage("--enumerate needs --degree".into()))?;
            let mut r = CertReport::new("normal elements by exhaustive search");
            r.fact("degree", d);
            match analysis::enumerate_normal(b, d) {
                Enumeration::Complete { points, normal } => {
                    r.fact("points", points);
                    r.fact(
                        "normal",
                        normal.iter().map(|c| c.render(b)).collect::<Vec<_>>(),
                    );
                }
                Enumeration::Unsupported(why) => r.unsupported(why),
            }
            r
        }
        Command::Normal { .. } => {
            return Err(CliError::Usage(
                "normal needs exactly one of --element or --enumerate".into(),
            ))
        }
        Command::Order { max: bound } => {
            let mut r = CertReport::new("order of det sigma");
            match data.det_sigma(max.min(4)) {
                Ok(det) => match analysis::endo_order(&det.map, data.base(), *bound) {
                    Some(n) => r.fact("order", n),
                    None => {
                        r.fact("order", "exceeds bound");
                        r.inconclusive(*bound, format!("no power up to {bound} is the identity"));
                    }
                },
                Err(e) => r.fail("det sigma", e.to_string()),
            }
            r
        }
        Command::Subdims { elements } => {
            let zs = elements
                .iter()
                .map(|t| element(b, t))
                .collect::<Result<Vec<_>, _>>()?;
            let mut r = CertReport::new("subalgebra dimensions").with_bound(max);
            r.fact("elements", elements);
            r.fact("dimensions", analysis::subalgebra_dims(b, &zs, max)?);
            r
        }
        Command::Validate | Command::DetSigma | Command::Example | Command::Checks | Command::Koszul => {
            unreachable!("handled without an extension")
        }
    };
    out.push(timed(start, report));
    Ok(())
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let input = load(cli)?;
    let mut out = Outcome::default();
    run_command(&cli.command, &input, &mut out)?;
    Ok(out)
}

/// Full front end: runs, prints and writes JSON. Returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(cli)));
    let out = match result {
        Ok(Ok(out)) => out,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            let _ = writeln!(stderr, "internal error: {msg}");
            return EXIT_INTERNAL;
        }
    };
    for t in &out.text {
        let _ = write!(stdout, "{t}");
    }
    for r in &out.reports {
        let _ = write!(stdout, "{}", r.render_text());
    }
    for (check, d) in &out.timings {
        let _ = writeln!(stderr, "time {check}: {:.3}s", d.as_secs_f64());
    }
    let code = out.exit_code();
    if let Some(path) = &cli.json {
        let body = JsonOut {
            command: cli.command.name(),
            exit_code: code,
            reports: &out.reports,
        };
        let text = serde_json::to_string_pretty(&body).expect("reports serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    code
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_PASS
            }
        }
    }
}
