//! Text front end for sessions.
//!
//! ```text
//! field q                      # or fp:7
//! base {
//!   generators x1:1, x2:1
//!   relation x2*x1 = -x1*x2
//! }
//! extension {
//!   deg_y = [1, 1]
//!   p12 = -1
//!   p11 = 0
//!   sigma(x1) = [[2*x1 + 2*x2, 2*x1], [2*x2, 0]]
//!   delta(x1) = [0, 0]
//!   tau = [0, 0, 0]
//! }
//! options { max_degree = 5; checks = validate, pbw }
//! ```
//!
//! Expressions use explicit `*`; scalars are integers or `n/d`. Statements
//! end at a newline or `;`.

mod ast;
mod parser;
mod resolve;

pub use ast::*;
pub use parser::{parse, parse_expr};
pub use resolve::{eval, eval_scalar, resolve_base, resolve_data};

use std::sync::Arc;

use thiserror::Error;

use crate::dedata::DEData;
use crate::exactla::Field;
use crate::ncalg::{Alphabet, NcPoly, ReductionSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SessionError {
    #[error("{}:{}: syntax error: {msg}", span.line, span.col)]
    Syntax { span: Span, msg: String },
    #[error("{}:{}: unknown generator `{name}`", span.line, span.col)]
    UnknownGenerator { span: Span, name: String },
    #[error("{}:{}: non-homogeneous {what}", span.line, span.col)]
    NonHomogeneous { span: Span, what: String },
    #[error("{}:{}: field literal: {msg}", span.line, span.col)]
    FieldLiteral { span: Span, msg: String },
    #[error("{}:{}: {msg}", span.line, span.col)]
    Shape { span: Span, msg: String },
    #[error("{0}")]
    Invalid(String),
}

impl SessionError {
    pub(crate) fn syntax(span: Span, msg: String) -> Self {
        SessionError::Syntax { span, msg }
    }
}

/// A resolved session: base algebra, optional DE-data and options.
#[derive(Clone, Debug)]
pub struct Session {
    pub field: Field,
    pub base: Arc<ReductionSystem>,
    pub data: Option<DEData>,
    pub options: Options,
}

impl Session {
    /// Resolves a parsed file; `field` overrides the file's declaration.
    pub fn resolve(file: &SessionFile, field: Option<Field>) -> Result<Self, SessionError> {
        let field = field.or(file.field).unwrap_or(Field::Rational);
        let base = resolve_base(file, field)?;
        let data = resolve_data(file, &base)?;
        Ok(Self {
            field,
            base,
            data,
            options: file.options.clone().unwrap_or_default(),
        })
    }

    pub fn from_text(text: &str, field: Option<Field>) -> Result<Self, SessionError> {
        Self::resolve(&parse(text)?, field)
    }
}

/// Writes DE-data back out as session text that parses to the same data.
pub fn render_data(data: &DEData) -> String {
    use std::fmt::Write;
    let ab = data.alphabet();
    let base = data.base();
    let mut out = format!("field {}\nbase {{\n", data.field());
    if !ab.is_empty() {
        let gens: Vec<String> = ab
            .letters()
            .map(|l| format!("{}:{}", ab.name(l), ab.degree(l)))
            .collect();
        let _ = writeln!(out, "  generators {}", gens.join(", "));
    }
    for rule in base.rules() {
        let _ = writeln!(out, "  relation {} = {}", ab.render(&rule.lead), rule.rhs.render(ab));
    }
    out.push_str("}\nextension {\n");
    let [d1, d2] = data.dy();
    let _ = writeln!(out, "  deg_y = [{d1}, {d2}]");
    let _ = writeln!(out, "  p12 = {}", data.p12());
    let _ = writeln!(out, "  p11 = {}", data.p11());
    for l in ab.letters() {
        let s = &data.sigma()[l as usize];
        let r = |i: usize, j: usize| s[i][j].render(ab);
        let _ = writeln!(
            out,
            "  sigma({}) = [[{}, {}], [{}, {}]]",
            ab.name(l),
            r(0, 0),
            r(0, 1),
            r(1, 0),
            r(1, 1)
        );
    }
    for l in ab.letters() {
        let d = &data.delta()[l as usize];
        if d.iter().all(NcPoly::is_zero) {
            continue;
        }
        let _ = writeln!(out, "  delta({}) = [{}, {}]", ab.name(l), d[0].render(ab), d[1].render(ab));
    }
    let t = data.tau();
    let _ = writeln!(out, "  tau = [{}, {}, {}]", t[0].render(ab), t[1].render(ab), t[2].render(ab));
    out.push_str("}\n");
    out
}

/// Parses and evaluates a polynomial over `alphabet`.
pub fn parse_poly(text: &str, alphabet: &Alphabet, field: Field) -> Result<NcPoly, SessionError> {
    eval(&parse_expr(text)?, alphabet, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BH: &str = "\
field q
base {
  generators x1:1, x2:1
  relation x2*x1 + x1*x2
}
extension {
  deg_y = [1, 1]
  p12 = -1
  p11 = 0
  sigma(x1) = [[2*(x1 + x2), 2*x1], [2*x2, 0]]
  sigma(x2) = [[0, 2*x1], [-2*x2, 2*(-x1 + x2)]]
  tau = [0, 0, 0]
}
";

    #[test]
    fn parses_the_deformed_plane_example() {
        let f = parse(BH).unwrap();
        let b = f.base.as_ref().unwrap();
        assert_eq!(b.generators.len(), 2);
        assert_eq!(b.relations.len(), 1);
        let s = Session::resolve(&f, None).unwrap();
        let d = s.data.unwrap();
        assert_eq!(d.p12(), &Field::Rational.from_i64(-1));
        assert_eq!(d.sigma()[0][0][0].render(d.alphabet()), "2*x2 + 2*x1");
    }

    #[test]
    fn empty_base_is_the_ground_field() {
        let s = Session::from_text("base { }\nextension { p12 = 1 }", None).unwrap();
        assert!(s.base.alphabet().is_empty());
        assert!(s.data.is_some());
    }

    #[test]
    fn wrong_sigma_shape() {
        let text = "base { generators x1 }\nextension {\n p12 = 1\n sigma(x1) = [[x1]]\n}";
        let err = parse(text).unwrap_err();
        assert!(matches!(err, SessionError::Shape { span, .. } if span.line == 4));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("base {\n  relation x1 +* x2\n}").unwrap_err();
        match err {
            SessionError::Syntax { span, .. } => assert_eq!((span.line, span.col), (2, 16)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("base { relation x1 x2 }").is_err());
    }

    #[test]
    fn semantic_errors() {
        let unknown = Session::from_text("base { generators x1\n relation x1*x3 }", None);
        assert!(matches!(unknown, Err(SessionError::UnknownGenerator { .. })));
        let inhom = Session::from_text("base { generators x1\n relation x1*x1 - x1 }", None);
        assert!(matches!(inhom, Err(SessionError::NonHomogeneous { .. })));
        let lit = Session::from_text(
            "field fp:7\nbase { generators x1, x2\n relation x2*x1 - 1/7*x1*x2 }",
            None,
        );
        assert!(matches!(lit, Err(SessionError::FieldLiteral { .. })));
    }

    #[test]
    fn render_round_trips() {
        let f = parse(BH).unwrap();
        let again = parse(&f.render()).unwrap();
        assert_eq!(f, again);
        let tricky = parse_expr("-(x1*x2) - -3/6*x1*-x2 + (x1 - x2) - (x1 + x2)").unwrap();
        assert_eq!(parse_expr(&tricky.render()).unwrap(), tricky);
    }
}
