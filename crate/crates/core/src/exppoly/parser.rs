//! Line-oriented system file reader and a recursive-descent expression parser.
//!
//! ```text
//! # comment
//! ring: g^2 - 2
//! vars: l1 l2
//! eq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1
//! ```
//!
//! Expressions follow
//!
//! ```text
//! expr     := signed (('+' | '-') signed)*
//! signed   := '-' signed | term
//! term     := factor ('*' factor)*
//! factor   := atom ('^' exponent)?
//! atom     := integer | identifier | '(' expr ')'
//! exponent := natural | variable
//! ```
//!
//! A variable exponent is only accepted on a base that mentions no variable.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Expr;
use crate::ring::{RingError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: &'static str, found: String },
    #[error("undeclared identifier `{0}`")]
    UndeclaredIdentifier(String),
    #[error("variable exponent on a base that contains variables")]
    VariableExponentOnVariableBase,
    #[error("exponent must be a natural number or a declared variable, found `{0}`")]
    InvalidExponent(String),
    #[error("exponent {0} is too large")]
    ExponentTooLarge(BigInt),
    #[error("ring polynomial must use a single identifier, found `{0}` after `{1}`")]
    SecondRingIdentifier(String, String),
    #[error("invalid ring: {0}")]
    Ring(#[from] RingError),
    #[error("unknown directive `{0}`; expected `ring:`, `vars:` or `eq:`")]
    UnknownDirective(String),
    #[error("duplicate `{0}` line")]
    DuplicateDirective(&'static str),
    #[error("missing `{0}` line")]
    MissingDirective(&'static str),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` has the same name as the ring generator")]
    VariableShadowsGenerator(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("at least one variable must be declared")]
    NoVariables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(v) => write!(f, "`{v}`"),
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::Caret => f.write_str("`^`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::End => f.write_str("end of line"),
        }
    }
}

/// Source text of one directive, positioned for error reporting.
#[derive(Debug, Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    /// 1-based column of `text`'s first character within its line.
    column: usize,
}

impl Span<'_> {
    fn error(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column + self.text[..offset].chars().count(),
            kind,
        }
    }
}

fn tokenize(span: Span<'_>) -> Result<Vec<(Token, usize)>, ParseError> {
    let text = span.text;
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().expect("in bounds");
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += c.len_utf8();
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Token::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => return Err(span.error(start, ParseErrorKind::UnexpectedChar(other))),
        };
        i += c.len_utf8();
        out.push((tok, start));
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

/// What an identifier in an expression refers to.
enum Binding {
    Generator,
    Var(usize),
}

trait Scope {
    fn resolve(&mut self, name: &str) -> Result<Binding, ParseErrorKind>;
}

/// Scope of the `ring:` line: the first identifier seen becomes the generator.
struct RingScope {
    generator: Option<String>,
}

impl Scope for RingScope {
    fn resolve(&mut self, name: &str) -> Result<Binding, ParseErrorKind> {
        match &self.generator {
            None => {
                self.generator = Some(name.to_string());
                Ok(Binding::Generator)
            }
            Some(g) if g == name => Ok(Binding::Generator),
            Some(g) => Err(ParseErrorKind::SecondRingIdentifier(name.to_string(), g.clone())),
        }
    }
}

struct EquationScope<'a> {
    generator: &'a str,
    vars: &'a [String],
}

impl Scope for EquationScope<'_> {
    fn resolve(&mut self, name: &str) -> Result<Binding, ParseErrorKind> {
        if name == self.generator {
            return Ok(Binding::Generator);
        }
        self.vars
            .iter()
            .position(|v| v == name)
            .map(Binding::Var)
            .ok_or_else(|| ParseErrorKind::UndeclaredIdentifier(name.to_string()))
    }
}

struct Parser<'a, S> {
    span: Span<'a>,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    scope: S,
}

impl<'a, S: Scope> Parser<'a, S> {
    fn new(span: Span<'a>, scope: S) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(span)?,
            span,
            pos: 0,
            scope,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.span.error(
            self.offset(),
            ParseErrorKind::UnexpectedToken {
                expected,
                found: self.peek().to_string(),
            },
        )
    }

    fn parse_all(mut self) -> Result<(Expr, S), ParseError> {
        let e = self.expr()?;
        if *self.peek() != Token::End {
            return Err(self.unexpected("an operator or end of line"));
        }
        Ok((e, self.scope))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.signed()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.signed()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.signed()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn signed(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.signed()?)));
        }
        self.term()
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base_offset = self.offset();
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_offset = self.offset();
        if !matches!(self.peek(), Token::Int(_) | Token::Ident(_)) {
            return Err(self.unexpected("a natural number or a variable exponent"));
        }
        match self.bump() {
            Token::Int(v) => {
                let k = u32::try_from(&v)
                    .map_err(|_| self.span.error(exp_offset, ParseErrorKind::ExponentTooLarge(v)))?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            Token::Ident(name) => {
                let binding = self
                    .scope
                    .resolve(&name)
                    .map_err(|kind| self.span.error(exp_offset, kind))?;
                match binding {
                    Binding::Var(_) if base.has_vars() => Err(self.span.error(
                        base_offset,
                        ParseErrorKind::VariableExponentOnVariableBase,
                    )),
                    Binding::Var(i) => Ok(Expr::ExpPow(Box::new(base), i)),
                    Binding::Generator => {
                        Err(self.span.error(exp_offset, ParseErrorKind::InvalidExponent(name)))
                    }
                }
            }
            _ => unreachable!("checked above"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Token::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Token::Ident(name) => {
                self.bump();
                match self.scope.resolve(&name) {
                    Ok(Binding::Generator) => Ok(Expr::Generator),
                    Ok(Binding::Var(i)) => Ok(Expr::Var(i)),
                    Err(kind) => Err(self.span.error(offset, kind)),
                }
            }
            Token::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected("a number, identifier or `(`")),
        }
    }
}

/// The parsed pieces of a system file, before normal forms are computed.
#[derive(Debug, Clone)]
pub struct ParsedFile {
    pub ring: RingSpec,
    pub vars: Vec<String>,
    pub equations: Vec<(String, Expr)>,
}

pub fn parse_file(text: &str) -> Result<ParsedFile, ParseError> {
    let mut ring_line: Option<Span<'_>> = None;
    let mut vars_line: Option<Span<'_>> = None;
    let mut eq_lines: Vec<Span<'_>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.len() - trimmed.len();
        let head = Span { text: content, line, column: 1 };
        let Some(colon) = trimmed.find(':') else {
            let word = trimmed.split_whitespace().next().unwrap_or("").to_string();
            return Err(head.error(lead, ParseErrorKind::UnknownDirective(word)));
        };
        let directive = trimmed[..colon].trim();
        let body_start = lead + colon + 1;
        let body = Span {
            text: &content[body_start..],
            line,
            column: 1 + content[..body_start].chars().count(),
        };
        let slot = match directive {
            "ring" => &mut ring_line,
            "vars" => &mut vars_line,
            "eq" => {
                eq_lines.push(body);
                continue;
            }
            other => {
                return Err(head.error(lead, ParseErrorKind::UnknownDirective(other.to_string())))
            }
        };
        if slot.is_some() {
            let name = if directive == "ring" { "ring:" } else { "vars:" };
            return Err(head.error(lead, ParseErrorKind::DuplicateDirective(name)));
        }
        *slot = Some(body);
    }

    let end = Span {
        text: "",
        line: text.lines().count().max(1),
        column: 1,
    };
    let ring_span = ring_line.ok_or_else(|| end.error(0, ParseErrorKind::MissingDirective("ring:")))?;
    let vars_span = vars_line.ok_or_else(|| end.error(0, ParseErrorKind::MissingDirective("vars:")))?;
    if eq_lines.is_empty() {
        return Err(end.error(0, ParseErrorKind::MissingDirective("eq:")));
    }

    let ring = parse_ring(ring_span)?;
    let vars = parse_vars(vars_span, ring.generator_name())?;
    let equations = eq_lines
        .into_iter()
        .map(|span| {
            let scope = EquationScope {
                generator: ring.generator_name(),
                vars: &vars,
            };
            let (expr, _) = Parser::new(span, scope)?.parse_all()?;
            Ok((span.text.trim().to_string(), expr))
        })
        .collect::<Result<_, ParseError>>()?;
    Ok(ParsedFile { ring, vars, equations })
}

/// Parses a single equation against an existing ring and variable list.
pub fn parse_equation(text: &str, ring: &RingSpec, vars: &[String]) -> Result<Expr, ParseError> {
    let span = Span { text, line: 1, column: 1 };
    let scope = EquationScope {
        generator: ring.generator_name(),
        vars,
    };
    Ok(Parser::new(span, scope)?.parse_all()?.0)
}

fn parse_ring(span: Span<'_>) -> Result<RingSpec, ParseError> {
    let (expr, scope) = Parser::new(span, RingScope { generator: None })?.parse_all()?;
    let coeffs = univariate(&expr);
    let name = scope.generator.unwrap_or_else(|| "g".to_string());
    RingSpec::from_min_poly(coeffs, name)
        .map_err(|e| span.error(span.text.len() - span.text.trim_start().len(), e.into()))
}

fn parse_vars(span: Span<'_>, generator: &str) -> Result<Vec<String>, ParseError> {
    let mut vars: Vec<String> = Vec::new();
    let mut offset = 0;
    for word in span.text.split_whitespace() {
        let at = offset + span.text[offset..].find(word).expect("word is in text");
        offset = at + word.len();
        let valid = word.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
            && word.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let kind = if !valid {
            ParseErrorKind::InvalidVariableName(word.to_string())
        } else if word == generator {
            ParseErrorKind::VariableShadowsGenerator(word.to_string())
        } else if vars.iter().any(|v| v == word) {
            ParseErrorKind::DuplicateVariable(word.to_string())
        } else {
            vars.push(word.to_string());
            continue;
        };
        return Err(span.error(at, kind));
    }
    if vars.is_empty() {
        return Err(span.error(0, ParseErrorKind::NoVariables));
    }
    Ok(vars)
}

/// Expands a variable-free expression over `Z[x]` with no reduction; used for the ring line.
fn univariate(e: &Expr) -> Vec<BigInt> {
    fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }
    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
    fn add(a: &[BigInt], b: &[BigInt], sign: i32) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] += y * sign;
        }
        trim(out)
    }
    match e {
        Expr::Int(v) => vec![v.clone()],
        Expr::Generator => vec![BigInt::zero(), BigInt::one()],
        Expr::Neg(a) => univariate(a).into_iter().map(|x| -x).collect(),
        Expr::Add(a, b) => add(&univariate(a), &univariate(b), 1),
        Expr::Sub(a, b) => add(&univariate(a), &univariate(b), -1),
        Expr::Mul(a, b) => mul(&univariate(a), &univariate(b)),
        Expr::Pow(a, k) => {
            let base = univariate(a);
            (0..*k).fold(vec![BigInt::one()], |acc, _| mul(&acc, &base))
        }
        Expr::Var(_) | Expr::ExpPow(..) => unreachable!("ring scope never binds variables"),
    }
}
