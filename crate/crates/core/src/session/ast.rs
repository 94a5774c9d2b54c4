use std::fmt::Write;

use num_bigint::BigInt;

use crate::exactla::Field;

/// Source position (1-based). Positions never take part in equality, so a
/// re-parsed rendering compares equal to the original.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    /// Reduced fraction with denominator > 1.
    Frac(BigInt, BigInt),
    Gen(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Neg(_) => 3,
            _ => 4,
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, 0);
        s
    }

    fn render_into(&self, out: &mut String, min: u8) {
        let paren = self.precedence() < min;
        if paren {
            out.push('(');
        }
        match &self.kind {
            ExprKind::Int(n) => {
                let _ = write!(out, "{n}");
            }
            ExprKind::Frac(n, d) => {
                let _ = write!(out, "{n}/{d}");
            }
            ExprKind::Gen(g) => out.push_str(g),
            ExprKind::Neg(e) => {
                out.push('-');
                e.render_into(out, 3);
            }
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                a.render_into(out, 1);
                out.push_str(if matches!(self.kind, ExprKind::Add(..)) { " + " } else { " - " });
                b.render_into(out, 2);
            }
            ExprKind::Mul(a, b) => {
                a.render_into(out, 2);
                out.push('*');
                b.render_into(out, 3);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Expr,
    pub rhs: Option<Expr>,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseBlock {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDecl {
    pub generator: String,
    pub matrix: [[Expr; 2]; 2],
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaDecl {
    pub generator: String,
    pub column: [Expr; 2],
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionBlock {
    pub deg_y: Option<[u32; 2]>,
    pub p12: Option<Expr>,
    pub p11: Option<Expr>,
    pub sigma: Vec<SigmaDecl>,
    pub delta: Vec<DeltaDecl>,
    pub tau: Option<[Expr; 3]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub max_degree: Option<u32>,
    pub checks: Vec<String>,
}

/// Parsed session file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SessionFile {
    pub field: Option<Field>,
    pub base: Option<BaseBlock>,
    pub extension: Option<ExtensionBlock>,
    pub options: Option<Options>,
}

impl SessionFile {
    /// Canonical text form; parsing it gives back an equal value.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(f) = self.field {
            let _ = writeln!(out, "field {f}");
        }
        if let Some(b) = &self.base {
            out.push_str("base {\n");
            if !b.generators.is_empty() {
                let gens: Vec<String> = b
                    .generators
                    .iter()
                    .map(|g| format!("{}:{}", g.name, g.degree))
                    .collect();
                let _ = writeln!(out, "  generators {}", gens.join(", "));
            }
            for r in &b.relations {
                match &r.rhs {
                    Some(rhs) => {
                        let _ = writeln!(out, "  relation {} = {}", r.lhs.render(), rhs.render());
                    }
                    None => {
                        let _ = writeln!(out, "  relation {}", r.lhs.render());
                    }
                }
            }
            out.push_str("}\n");
        }
        if let Some(e) = &self.extension {
            out.push_str("extension {\n");
            if let Some([a, b]) = e.deg_y {
                let _ = writeln!(out, "  deg_y = [{a}, {b}]");
            }
            if let Some(p) = &e.p12 {
                let _ = writeln!(out, "  p12 = {}", p.render());
            }
            if let Some(p) = &e.p11 {
                let _ = writeln!(out, "  p11 = {}", p.render());
            }
            for s in &e.sigma {
                let m = &s.matrix;
                let _ = writeln!(
                    out,
                    "  sigma({}) = [[{}, {}], [{}, {}]]",
                    s.generator,
                    m[0][0].render(),
                    m[0][1].render(),
                    m[1][0].render(),
                    m[1][1].render()
                );
            }
            for d in &e.delta {
                let _ = writeln!(
                    out,
                    "  delta({}) = [{}, {}]",
                    d.generator,
                    d.column[0].render(),
                    d.column[1].render()
                );
            }
            if let Some(t) = &e.tau {
                let _ = writeln!(
                    out,
                    "  tau = [{}, {}, {}]",
                    t[0].render(),
                    t[1].render(),
                    t[2].render()
                );
            }
            out.push_str("}\n");
        }
        if let Some(o) = &self.options {
            out.push_str("options {\n");
            if let Some(d) = o.max_degree {
                let _ = writeln!(out, "  max_degree = {d}");
            }
            if !o.checks.is_empty() {
                let _ = writeln!(out, "  checks = {}", o.checks.join(", "));
            }
            out.push_str("}\n");
        }
        out
    }
}
