//! Text format for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' int)?
//! base   := variable | int ['/' int] | '(' expr ')'
//! ```
//!
//! Variables are `x0..x3`, with `x`, `y`, `z`, `w` as aliases. Multiplication
//! must be written out and exponents may not exceed 64.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{MultiPoly, Rational, MAX_VARS};

pub const MAX_EXPONENT: u32 = 64;
const MAX_DEGREE: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    /// Byte offset into the source, or into the line for curve files.
    pub pos: usize,
    /// One-based line number when parsing a curve file.
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentOverflow,
    #[error("degree exceeds {MAX_DEGREE}")]
    DegreeOverflow,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expected {0}")]
    Expected(&'static str),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos,
            line: None,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => self.err(ParseErrorKind::UnexpectedChar(c as char)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let start = self.pos;
            let rhs = self.factor()?;
            if acc.total_degree().unwrap_or(0) + rhs.total_degree().unwrap_or(0) > MAX_DEGREE {
                self.pos = start;
                return Err(self.err(ParseErrorKind::DegreeOverflow));
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let e = self.integer()?;
        if e > BigInt::from(MAX_EXPONENT) {
            self.pos = start;
            return Err(self.err(ParseErrorKind::ExponentOverflow));
        }
        let e: u32 = e.try_into().expect("bounded exponent");
        if base.total_degree().unwrap_or(0) * e > MAX_DEGREE {
            self.pos = start;
            return Err(self.err(ParseErrorKind::DegreeOverflow));
        }
        Ok(base.pow(e))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.src.get(self.pos) {
                Some(_) => self.err(ParseErrorKind::Expected("an integer")),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(match self.peek() {
                        None => self.err(ParseErrorKind::UnexpectedEnd),
                        Some(_) => self.err(ParseErrorKind::Expected("')'")),
                    });
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    let start = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        self.pos = start;
                        self.skip_ws();
                        return Err(self.err(ParseErrorKind::ZeroDenominator));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(MultiPoly::constant(0, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let index = match name {
                    "x" => Some(0),
                    "y" => Some(1),
                    "z" => Some(2),
                    "w" => Some(3),
                    _ => name
                        .strip_prefix('x')
                        .filter(|d| d.len() == 1)
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&i| i < MAX_VARS),
                };
                match index {
                    Some(i) => Ok(MultiPoly::var(i + 1, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(ParseErrorKind::UnknownVariable(name.to_string())))
                    }
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses one polynomial. The result uses as many variables as its highest
/// index requires.
pub fn parse_poly(src: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    let n = e.support_len();
    Ok(e.with_nvars(n))
}

/// Canonical text: graded-lex descending terms, reduced rational coefficients.
pub fn print_poly(p: &MultiPoly) -> String {
    p.to_string()
}

/// One polynomial per nonblank line; `#` starts a comment.
pub fn parse_curve_file(text: &str) -> Result<Vec<MultiPoly>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let p = parse_poly(line).map_err(|e| ParseError {
            line: Some(i + 1),
            ..e
        })?;
        out.push(p);
    }
    Ok(out)
}
