//! Canonical polynomial text format.
//!
//! Grammar (whitespace insignificant everywhere):
//!
//! ```text
//! polynomial := ['-'] term (('+' | '-') term)*
//! term       := COEFF '*' factors | COEFF | factors
//! factors    := factor ('*' factor)*
//! factor     := VAR ['^' NUMBER]
//! VAR        := 'a' | 'p' | 'c'
//! COEFF      := NUMBER
//! NUMBER     := ['-'] INT ['/' INT]
//! ```
//!
//! The literal `0` is the zero polynomial. Repeated variables inside one
//! term multiply, so their exponents add. Negative and fractional
//! exponents are accepted; they arise from centered enumerators.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use super::{Monomial, Polynomial, Var, VarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Var(Var),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Caret => write!(f, "'^'"),
            Token::Slash => write!(f, "'/'"),
            Token::Int(n) => write!(f, "integer {n}"),
            Token::Var(v) => write!(f, "variable '{v}'"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    line: usize,
    column: usize,
}

type Spanned = (Token, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, line: 1, column: 1 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn bump(&mut self, ch: char) {
        self.src = &self.src[ch.len_utf8()..];
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while let Some(ch) = self.src.chars().next() {
            if ch.is_whitespace() {
                self.bump(ch);
                continue;
            }
            let (line, column) = (self.line, self.column);
            let token = match ch {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '^' => Token::Caret,
                '/' => Token::Slash,
                '0'..='9' => {
                    let digits: String = self.src.chars().take_while(|c| c.is_ascii_digit()).collect();
                    for d in digits.chars() {
                        self.bump(d);
                    }
                    out.push((Token::Int(digits.parse().expect("digit run")), line, column));
                    continue;
                }
                _ => match Var::from_symbol(ch) {
                    Some(v) => Token::Var(v),
                    None => return Err(self.error(format!("unexpected character {ch:?}"))),
                },
            };
            self.bump(ch);
            out.push((token, line, column));
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        Self::error_at(self.here(), message)
    }

    fn error_at((line, column): (usize, usize), message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self, what: &str) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(format!("expected {what}, found {}", self.describe_next()))),
        }
    }

    /// NUMBER := ['-'] INT ['/' INT]
    fn number(&mut self, what: &str) -> Result<BigRational, ParseError> {
        let negative = self.eat(&Token::Minus);
        let numer = self.integer(what)?;
        let denom = if self.eat(&Token::Slash) {
            let at = self.here();
            let d = self.integer("denominator")?;
            if d.is_zero() {
                return Err(Self::error_at(at, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let value = BigRational::new(numer, denom);
        Ok(if negative { -value } else { value })
    }

    /// factor := VAR ['^' NUMBER]; returns (variable, exponent)
    fn factor(&mut self) -> Result<(Var, BigRational), ParseError> {
        let var = match self.peek() {
            Some(Token::Var(v)) => {
                let v = *v;
                self.pos += 1;
                v
            }
            _ => return Err(self.error(format!("expected variable, found {}", self.describe_next()))),
        };
        let exponent = if self.eat(&Token::Caret) {
            self.number("exponent")?
        } else {
            BigRational::one()
        };
        Ok((var, exponent))
    }

    /// term := COEFF '*' factors | COEFF | factors
    fn term(&mut self) -> Result<(BigRational, Monomial), ParseError> {
        let mut coeff = match self.peek() {
            Some(Token::Int(_)) | Some(Token::Minus) => {
                let k = self.number("coefficient")?;
                if !self.eat(&Token::Star) {
                    return Ok((k, Monomial::one()));
                }
                k
            }
            _ => BigRational::one(),
        };
        let mut exponents = VarMap::zeros();
        loop {
            let (var, exponent) = self.factor()?;
            exponents = VarMap::from_fn(|v| {
                if v == var {
                    &exponents[v] + &exponent
                } else {
                    exponents[v].clone()
                }
            });
            if !self.eat(&Token::Star) {
                break;
            }
            // allow COEFF in any '*' position, e.g. "a*2*b" style inputs
            if matches!(self.peek(), Some(Token::Int(_)) | Some(Token::Minus)) {
                coeff *= self.number("coefficient")?;
                if !self.eat(&Token::Star) {
                    break;
                }
            }
        }
        let monomial = Monomial::from_exponents(
            exponents[Var::A].clone(),
            exponents[Var::P].clone(),
            exponents[Var::C].clone(),
        );
        Ok((coeff, monomial))
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        if self.tokens.is_empty() {
            return Err(self.error("empty input, expected a polynomial"));
        }
        let mut poly = Polynomial::zero();
        let mut negate = false;
        if self.eat(&Token::Minus) {
            negate = true;
        } else {
            self.eat(&Token::Plus);
        }
        loop {
            let (coeff, monomial) = self.term()?;
            poly.add_term(if negate { -coeff } else { coeff }, monomial);
            if self.eat(&Token::Plus) {
                negate = false;
            } else if self.eat(&Token::Minus) {
                negate = true;
            } else if self.pos >= self.tokens.len() {
                return Ok(poly);
            } else {
                return Err(self.error(format!(
                    "expected '+', '-', or end of input, found {}",
                    self.describe_next()
                )));
            }
        }
    }
}

/// Parse the canonical polynomial grammar. Errors carry a 1-based
/// line and column.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    let mut end = (1, 1);
    for ch in src.chars() {
        if ch == '\n' {
            end = (end.0 + 1, 1);
        } else {
            end = (end.0, end.1 + 1);
        }
    }
    let tokens = Lexer::new(src).tokenize()?;
    let mut parser = Parser { tokens, pos: 0, end };
    parser.polynomial()
}

fn render_term(coeff: &BigRational, monomial: &Monomial) -> String {
    let magnitude = coeff.abs();
    let mut factors = Vec::new();
    for v in Var::PRINT_ORDER {
        let exponent = monomial.exponent(v);
        if exponent.is_zero() {
            continue;
        }
        if exponent.is_one() {
            factors.push(v.to_string());
        } else {
            factors.push(format!("{v}^{exponent}"));
        }
    }
    if factors.is_empty() {
        return magnitude.to_string();
    }
    let body = factors.join("*");
    if magnitude.is_one() {
        body
    } else {
        format!("{magnitude}*{body}")
    }
}

/// Canonical single-line form: terms in canonical order, joined by
/// ` + ` / ` - `, a bare leading `-` for a negative first term.
pub fn print_canonical(poly: &Polynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (monomial, coeff)) in poly.terms().enumerate() {
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&render_term(coeff, monomial));
    }
    out
}

/// Grouped form: one line per distinct `a`-exponent, groups ascending,
/// later lines led by their join sign. Still inside the grammar, so
/// `parse_polynomial` reads it back.
pub fn print_grouped(poly: &Polynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut lines: Vec<String> = Vec::new();
    let mut current_a: Option<&BigRational> = None;
    for (monomial, coeff) in poly.terms() {
        let a = monomial.exponent(Var::A);
        let new_group = current_a != Some(a);
        if new_group {
            current_a = Some(a);
            lines.push(String::new());
        }
        let first_overall = lines.len() == 1 && lines[0].is_empty();
        let line = lines.last_mut().expect("group line");
        match (line.is_empty(), coeff.is_negative()) {
            (true, true) => line.push_str(if first_overall { "-" } else { "- " }),
            (true, false) => {
                if !first_overall {
                    line.push_str("+ ");
                }
            }
            (false, true) => line.push_str(" - "),
            (false, false) => line.push_str(" + "),
        }
        line.push_str(&render_term(coeff, monomial));
    }
    lines.join("\n")
}
