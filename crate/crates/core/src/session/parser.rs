use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactla::Field;

use super::ast::*;
use super::SessionError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<Vec<Token>, SessionError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let span = Span {
                line: li + 1,
                col: i + 1,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(s.parse().expect("digits")),
                    span,
                });
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    span,
                });
                continue;
            }
            if "+-*/()[]{},:=;".contains(c) {
                out.push(Token {
                    tok: if c == ';' { Tok::Newline } else { Tok::Sym(c) },
                    span,
                });
                i += 1;
                continue;
            }
            return Err(SessionError::syntax(span, format!("unexpected character `{c}`")));
        }
        out.push(Token {
            tok: Tok::Newline,
            span: Span {
                line: li + 1,
                col: chars.len() + 1,
            },
        });
    }
    let line = text.lines().count() + 1;
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col: 1 },
    });
    Ok(out)
}

/// A bracketed literal before its shape is checked.
enum Lit {
    Expr(Expr),
    List(Vec<Lit>, Span),
}

impl Lit {
    fn span(&self) -> Span {
        match self {
            Lit::Expr(e) => e.span,
            Lit::List(_, s) => *s,
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, SessionError> {
        Err(SessionError::syntax(
            self.span(),
            format!("expected {wanted}, found {}", Self::describe(self.peek())),
        ))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Span, SessionError> {
        let span = self.span();
        if self.eat_sym(c) {
            Ok(span)
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn end_of_statement(&mut self) -> Result<(), SessionError> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof | Tok::Sym('}') => Ok(()),
            _ => self.unexpected("end of statement"),
        }
    }

    fn ident(&mut self) -> Result<(String, Span), SessionError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, span))
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn small_int(&mut self) -> Result<u32, SessionError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_u32()
                    .ok_or_else(|| SessionError::syntax(span, "integer too large".into()))
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn file(&mut self) -> Result<SessionFile, SessionError> {
        let mut file = SessionFile::default();
        loop {
            self.skip_newlines();
            if *self.peek() == Tok::Eof {
                return Ok(file);
            }
            let (kw, span) = self.ident()?;
            match kw.as_str() {
                "field" => {
                    if file.field.is_some() {
                        return Err(SessionError::syntax(span, "field declared twice".into()));
                    }
                    file.field = Some(self.field_spec()?);
                    self.end_of_statement()?;
                }
                "base" => {
                    if file.base.is_some() {
                        return Err(SessionError::syntax(span, "second base block".into()));
                    }
                    file.base = Some(self.base_block()?);
                }
                "extension" => {
                    if file.extension.is_some() {
                        return Err(SessionError::syntax(span, "second extension block".into()));
                    }
                    file.extension = Some(self.extension_block()?);
                }
                "options" => {
                    if file.options.is_some() {
                        return Err(SessionError::syntax(span, "second options block".into()));
                    }
                    file.options = Some(self.options_block()?);
                }
                other => {
                    return Err(SessionError::syntax(
                        span,
                        format!("unknown section `{other}` (expected field, base, extension or options)"),
                    ))
                }
            }
        }
    }

    fn field_spec(&mut self) -> Result<Field, SessionError> {
        let (name, span) = self.ident()?;
        let text = if name == "fp" {
            self.expect_sym(':')?;
            format!("fp:{}", self.small_int()?)
        } else {
            name
        };
        text.parse::<Field>()
            .map_err(|e| SessionError::syntax(span, e.to_string()))
    }

    fn block<F>(&mut self, mut statement: F) -> Result<(), SessionError>
    where
        F: FnMut(&mut Self, String, Span) -> Result<(), SessionError>,
    {
        self.skip_newlines();
        self.expect_sym('{')?;
        loop {
            self.skip_newlines();
            if self.eat_sym('}') {
                return self.end_of_statement();
            }
            let (kw, span) = self.ident()?;
            statement(self, kw, span)?;
            self.end_of_statement()?;
        }
    }

    fn base_block(&mut self) -> Result<BaseBlock, SessionError> {
        let mut b = BaseBlock::default();
        self.block(|p, kw, span| match kw.as_str() {
            "generators" => loop {
                let (name, gspan) = p.ident()?;
                let degree = if p.eat_sym(':') { p.small_int()? } else { 1 };
                b.generators.push(Generator {
                    name,
                    degree,
                    span: gspan,
                });
                if !p.eat_sym(',') {
                    return Ok(());
                }
            },
            "relation" => {
                let lhs = p.expr()?;
                let rhs = if p.eat_sym('=') { Some(p.expr()?) } else { None };
                b.relations.push(Relation { lhs, rhs, span });
                Ok(())
            }
            other => Err(SessionError::syntax(
                span,
                format!("unknown base statement `{other}`"),
            )),
        })?;
        Ok(b)
    }

    fn extension_block(&mut self) -> Result<ExtensionBlock, SessionError> {
        let mut e = ExtensionBlock::default();
        self.block(|p, kw, span| {
            match kw.as_str() {
                "deg_y" => {
                    p.expect_sym('=')?;
                    p.expect_sym('[')?;
                    let a = p.small_int()?;
                    p.expect_sym(',')?;
                    let b = p.small_int()?;
                    p.expect_sym(']')?;
                    e.deg_y = Some([a, b]);
                }
                "p12" | "p11" => {
                    p.expect_sym('=')?;
                    let v = Some(p.expr()?);
                    if kw == "p12" {
                        e.p12 = v;
                    } else {
                        e.p11 = v;
                    }
                }
                "sigma" | "delta" => {
                    p.expect_sym('(')?;
                    let (generator, _) = p.ident()?;
                    p.expect_sym(')')?;
                    p.expect_sym('=')?;
                    let lit = p.literal()?;
                    if kw == "sigma" {
                        let matrix = shape_matrix(lit)?;
                        e.sigma.push(SigmaDecl {
                            generator,
                            matrix,
                            span,
                        });
                    } else {
                        let column = shape_vector::<2>(lit, "delta column")?;
                        e.delta.push(DeltaDecl {
                            generator,
                            column,
                            span,
                        });
                    }
                }
                "tau" => {
                    p.expect_sym('=')?;
                    let lit = p.literal()?;
                    e.tau = Some(shape_vector::<3>(lit, "tau triple")?);
                }
                other => {
                    return Err(SessionError::syntax(
                        span,
                        format!("unknown extension statement `{other}`"),
                    ))
                }
            }
            Ok(())
        })?;
        Ok(e)
    }

    fn options_block(&mut self) -> Result<Options, SessionError> {
        let mut o = Options::default();
        self.block(|p, kw, span| match kw.as_str() {
            "max_degree" => {
                p.expect_sym('=')?;
                o.max_degree = Some(p.small_int()?);
                Ok(())
            }
            "checks" => {
                p.expect_sym('=')?;
                loop {
                    let (name, _) = p.ident()?;
                    let mut name = name;
                    // check names may contain dashes, e.g. det-sigma
                    while p.eat_sym('-') {
                        name.push('-');
                        name.push_str(&p.ident()?.0);
                    }
                    o.checks.push(name);
                    if !p.eat_sym(',') {
                        return Ok(());
                    }
                }
            }
            other => Err(SessionError::syntax(
                span,
                format!("unknown option `{other}`"),
            )),
        })?;
        Ok(o)
    }

    fn literal(&mut self) -> Result<Lit, SessionError> {
        let span = self.span();
        if self.eat_sym('[') {
            let mut items = vec![self.literal()?];
            while self.eat_sym(',') {
                items.push(self.literal()?);
            }
            self.expect_sym(']')?;
            Ok(Lit::List(items, span))
        } else {
            Ok(Lit::Expr(self.expr()?))
        }
    }

    pub(super) fn expr(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = self.term()?;
        loop {
            let span = self.span();
            let make: fn(Box<Expr>, Box<Expr>) -> ExprKind = if self.eat_sym('+') {
                ExprKind::Add
            } else if self.eat_sym('-') {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr {
                kind: make(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = self.factor()?;
        loop {
            let span = self.span();
            if !self.eat_sym('*') {
                return Ok(lhs);
            }
            let rhs = self.factor()?;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn factor(&mut self) -> Result<Expr, SessionError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Sym('-') => {
                self.bump();
                let inner = self.factor()?;
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    span,
                })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Gen(name),
                    span,
                })
            }
            Tok::Int(n) => {
                self.bump();
                if self.eat_sym('/') {
                    let dspan = self.span();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.unexpected("an integer denominator");
                    };
                    self.bump();
                    if d.is_zero() {
                        return Err(SessionError::FieldLiteral {
                            span: dspan,
                            msg: "zero denominator".into(),
                        });
                    }
                    let g = n.gcd(&d);
                    let (n, d) = (&n / &g, &d / &g);
                    let kind = if d.is_one() {
                        ExprKind::Int(n)
                    } else {
                        ExprKind::Frac(n, d)
                    };
                    return Ok(Expr { kind, span });
                }
                Ok(Expr {
                    kind: ExprKind::Int(n),
                    span,
                })
            }
            _ => self.unexpected("an expression"),
        }
    }
}

fn shape_error<T>(span: Span, what: &str) -> Result<T, SessionError> {
    Err(SessionError::Shape {
        span,
        msg: format!("{what} has the wrong shape"),
    })
}

fn shape_vector<const N: usize>(lit: Lit, what: &str) -> Result<[Expr; N], SessionError> {
    let span = lit.span();
    let Lit::List(items, _) = lit else {
        return shape_error(span, what);
    };
    if items.len() != N {
        return shape_error(span, what);
    }
    let exprs: Vec<Expr> = items
        .into_iter()
        .map(|i| match i {
            Lit::Expr(e) => Ok(e),
            Lit::List(_, s) => shape_error(s, what),
        })
        .collect::<Result<_, _>>()?;
    Ok(exprs.try_into().unwrap_or_else(|_| unreachable!()))
}

fn shape_matrix(lit: Lit) -> Result<[[Expr; 2]; 2], SessionError> {
    let span = lit.span();
    let Lit::List(rows, _) = lit else {
        return shape_error(span, "sigma matrix");
    };
    if rows.len() != 2 {
        return shape_error(span, "sigma matrix");
    }
    let mut it = rows.into_iter();
    let r0 = shape_vector::<2>(it.next().expect("two rows"), "sigma matrix")?;
    let r1 = shape_vector::<2>(it.next().expect("two rows"), "sigma matrix")?;
    Ok([r0, r1])
}

pub fn parse(text: &str) -> Result<SessionFile, SessionError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    p.file()
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr, SessionError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_newlines();
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of expression");
    }
    Ok(e)
}
