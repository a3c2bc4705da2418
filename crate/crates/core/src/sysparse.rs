//! Parser for plain-text polynomial system descriptions.
//!
//! ```text
//! # comment
//! param d = 1/10
//! dx = d*x + x^2 - y
//! dy = x*(1 + x + y)
//! ```
//!
//! Statements are separated by newlines or `;`. Expressions use `+ - * / ^`
//! and parentheses; `/` is allowed only by a nonzero constant, exponents are
//! non-negative integer literals and `^` binds tighter than unary minus.
//! Decimal literals are read exactly (`0.65349` is `65349/100000`).
//! An optional `conic = centered` or `conic = general` line selects the conic
//! family used when gluing.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{rational_string, BiPoly, Rational};

const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 200;

/// Which conic family the gluing step fits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicForm {
    /// `1 + s3 x^2 + s4 xy + s5 y^2` (no linear terms).
    Centered,
    /// `1 + s1 x + s2 y + s3 x^2 + s4 xy + s5 y^2`.
    General,
}

/// A planar polynomial vector field `(P, Q)` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub p: BiPoly,
    pub q: BiPoly,
    /// Parameter values, already substituted into `p` and `q`.
    pub params: BTreeMap<String, Rational>,
    /// True iff the field is odd: `P(-x,-y) = -P(x,y)` and likewise for `Q`.
    pub symmetric: bool,
    /// Conic family requested by the file, if any.
    pub conic_form: Option<ConicForm>,
}

impl SystemSpec {
    /// Builds a system from polynomials, checking the origin is an equilibrium.
    pub fn new(p: BiPoly, q: BiPoly) -> Result<SystemSpec, ParseError> {
        if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
            return Err(ParseError::NonzeroOrigin);
        }
        let symmetric = p.is_odd() && q.is_odd();
        Ok(SystemSpec {
            p,
            q,
            params: BTreeMap::new(),
            symmetric,
            conic_form: None,
        })
    }

    /// Degree of the vector field, `max(deg P, deg Q)`.
    pub fn degree(&self) -> u32 {
        self.p
            .total_degree()
            .unwrap_or(0)
            .max(self.q.total_degree().unwrap_or(0))
    }

    /// The conic family to glue: the file's request, else centered for odd
    /// fields and general otherwise.
    pub fn default_conic_form(&self) -> ConicForm {
        self.conic_form.unwrap_or(if self.symmetric {
            ConicForm::Centered
        } else {
            ConicForm::General
        })
    }

    /// `P f_x + Q f_y`.
    pub fn lie_derivative(&self, f: &BiPoly) -> BiPoly {
        use crate::exactalg::Var;
        self.p
            .mul(&f.derivative(Var::First))
            .add(&self.q.mul(&f.derivative(Var::Second)))
    }

    /// Source text that parses back to this system.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.params {
            s.push_str(&format!("param {k} = {}\n", rational_string(v)));
        }
        if let Some(form) = self.conic_form {
            let name = match form {
                ConicForm::Centered => "centered",
                ConicForm::General => "general",
            };
            s.push_str(&format!("conic = {name}\n"));
        }
        s.push_str(&format!("dx = {}\n", self.p));
        s.push_str(&format!("dy = {}\n", self.q));
        s
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx = {}; dy = {}", self.p, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("the system neither declares nor uses a parameter `{0}`")]
    UndeclaredParameter(String),
    #[error("the origin is not an equilibrium (nonzero constant term)")]
    NonzeroOrigin,
    #[error("division by a non-constant or zero expression at line {line}, column {col}")]
    DivisionInExpression { line: usize, col: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rational),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            let mut frac = String::new();
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                frac = chars[fs..i].iter().collect();
            }
            let digits = format!("{int_part}{frac}");
            let numer: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().expect("digit string")
            };
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            out.push(Token {
                tok: Tok::Num(Rational::new(numer, denom)),
                line,
                col,
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
                line,
                col,
            });
            continue;
        }
        if "+-*/^()=".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
            });
            i += 1;
            continue;
        }
        return Err(ParseError::SyntaxError {
            line,
            col,
            msg: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col: chars.len() + 1,
    });
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Token>,
    pos: usize,
    params: &'a BTreeMap<String, Rational>,
    allow_vars: bool,
    depth: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek().clone();
            return self.err(&t, "expression nested too deeply");
        }
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Sym('*') => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Sym('/') => {
                    let t = self.next();
                    let d = self.unary()?;
                    let c = d.constant_term();
                    if d.total_degree().unwrap_or(0) > 0 || c.is_zero() {
                        return Err(ParseError::DivisionInExpression {
                            line: t.line,
                            col: t.col,
                        });
                    }
                    acc = acc.scale(&(Rational::one() / c));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek().tok {
            Tok::Sym('-') => {
                self.next();
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    let t = self.peek().clone();
                    return self.err(&t, "expression nested too deeply");
                }
                let v = self.unary()?.neg();
                self.depth -= 1;
                Ok(v)
            }
            Tok::Sym('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly, ParseError> {
        let mut base = self.atom()?;
        while self.peek().tok == Tok::Sym('^') {
            self.next();
            let t = self.next();
            let e = match &t.tok {
                Tok::Num(r) if r.is_integer() && r.numer() <= &BigInt::from(MAX_EXPONENT) => {
                    u32::try_from(r.numer()).expect("bounded exponent")
                }
                Tok::Num(_) => {
                    return self.err(&t, format!("exponent must be an integer in 0..={MAX_EXPONENT}"))
                }
                _ => return self.err(&t, "expected a non-negative integer exponent"),
            };
            base = base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(r) => Ok(BiPoly::constant(r.clone())),
            Tok::Ident(name) => match name.as_str() {
                "x" | "y" if !self.allow_vars => self.err(&t, "state variables are not allowed here"),
                "x" => Ok(BiPoly::monomial(Rational::one(), 1, 0)),
                "y" => Ok(BiPoly::monomial(Rational::one(), 0, 1)),
                _ => match self.params.get(name) {
                    Some(v) => Ok(BiPoly::constant(v.clone())),
                    None => Err(ParseError::UnboundParameter(name.clone())),
                },
            },
            Tok::Sym('(') => {
                let v = self.expr()?;
                let close = self.next();
                if close.tok != Tok::Sym(')') {
                    return self.err(&close, "expected `)`");
                }
                Ok(v)
            }
            Tok::End => self.err(&t, "unexpected end of expression"),
            Tok::Sym(c) => self.err(&t, format!("unexpected `{c}`")),
        }
    }
}

fn parse_expr(
    toks: Vec<Token>,
    params: &BTreeMap<String, Rational>,
    allow_vars: bool,
) -> Result<BiPoly, ParseError> {
    let mut p = ExprParser {
        toks,
        pos: 0,
        params,
        allow_vars,
        depth: 0,
    };
    let v = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(v)
}

fn statements(text: &str) -> Vec<(usize, usize, &str)> {
    // (line number, column offset, statement text)
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut offset = 0;
        for part in line.split(';') {
            out.push((ln + 1, offset, part));
            offset += part.chars().count() + 1;
        }
    }
    out
}

/// Parses a system description; `bindings` override `param` lines.
pub fn parse_system(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<SystemSpec, ParseError> {
    let mut params: BTreeMap<String, Rational> = BTreeMap::new();
    let mut dx: Option<Vec<Token>> = None;
    let mut dy: Option<Vec<Token>> = None;
    let mut conic_form = None;
    let mut last_line = 1;
    for (line, offset, stmt) in statements(text) {
        last_line = line;
        let mut toks = lex_line(stmt, line)?;
        for t in &mut toks {
            t.col += offset;
        }
        if toks[0].tok == Tok::End {
            continue;
        }
        let head = toks[0].clone();
        let syntax = |t: &Token, msg: &str| ParseError::SyntaxError {
            line: t.line,
            col: t.col,
            msg: msg.to_string(),
        };
        match &head.tok {
            Tok::Ident(kw) if kw == "param" => {
                let name = match &toks[1].tok {
                    Tok::Ident(n) if n != "x" && n != "y" => n.clone(),
                    _ => return Err(syntax(&toks[1], "expected a parameter name")),
                };
                if toks[2].tok != Tok::Sym('=') {
                    return Err(syntax(&toks[2], "expected `=`"));
                }
                let value = parse_expr(toks[3..].to_vec(), &params, false)?;
                params.insert(name, value.constant_term());
            }
            Tok::Ident(kw) if kw == "dx" || kw == "dy" || kw == "conic" => {
                if toks[1].tok != Tok::Sym('=') {
                    return Err(syntax(&toks[1], "expected `=`"));
                }
                let rhs = toks[2..].to_vec();
                if kw == "conic" {
                    conic_form = Some(match (&rhs[0].tok, rhs.get(1).map(|t| &t.tok)) {
                        (Tok::Ident(v), Some(Tok::End)) if v == "centered" => ConicForm::Centered,
                        (Tok::Ident(v), Some(Tok::End)) if v == "general" => ConicForm::General,
                        _ => return Err(syntax(&rhs[0], "expected `centered` or `general`")),
                    });
                    continue;
                }
                let slot = if kw == "dx" { &mut dx } else { &mut dy };
                if slot.is_some() {
                    return Err(syntax(&head, "duplicate assignment"));
                }
                *slot = Some(rhs);
            }
            _ => return Err(syntax(&head, "expected `param`, `dx`, `dy` or `conic`")),
        }
    }
    let used = |name: &str| {
        [&dx, &dy]
            .into_iter()
            .flatten()
            .any(|toks| toks.iter().any(|t| matches!(&t.tok, Tok::Ident(n) if n == name)))
    };
    for (k, v) in bindings {
        if k == "x" || k == "y" || (!params.contains_key(k) && !used(k)) {
            return Err(ParseError::UndeclaredParameter(k.clone()));
        }
        params.insert(k.clone(), v.clone());
    }
    let missing = |what: &str| ParseError::SyntaxError {
        line: last_line,
        col: 1,
        msg: format!("missing `{what} = ...` statement"),
    };
    let p = parse_expr(dx.ok_or_else(|| missing("dx"))?, &params, true)?;
    let q = parse_expr(dy.ok_or_else(|| missing("dy"))?, &params, true)?;
    let mut sys = SystemSpec::new(p, q)?;
    sys.params = params;
    sys.conic_form = conic_form;
    Ok(sys)
}

/// Parses a rational literal such as `-613/2000`, `0.65349` or `3`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let toks = lex_line(text, 1)?;
    let v = parse_expr(toks, &BTreeMap::new(), false)?;
    Ok(v.constant_term())
}

/// Parses `name=value` bindings.
pub fn parse_binding(text: &str) -> Result<(String, Rational), ParseError> {
    let (name, value) = text.split_once('=').ok_or_else(|| ParseError::SyntaxError {
        line: 1,
        col: 1,
        msg: format!("expected name=value, got `{text}`"),
    })?;
    Ok((name.trim().to_string(), parse_rational(value)?))
}
