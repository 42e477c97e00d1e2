//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg-int)?
//! base   := variable | constant | rational | '(' expr ')'
//! ```
//!
//! Variables are `X Y Z W` (or `x0..x3`); `e1..e4` are accepted in elementary-basis
//! mode and expand to the elementary symmetric polynomials. Constants are `omega`
//! and `I`; rational literals are `p` or `p/q`.

use std::fmt;

use rug::{Integer, Rational};
use thiserror::Error;

use super::{elementary_symmetric, MultiPoly};
use crate::exactnum::Cyclo12;

const MAX_EXPONENT: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisMode {
    #[default]
    Monomial,
    Elementary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownIdentifier(String),
    WrongVariable(String),
    ElementaryNotAllowed(String),
    ExponentTooLarge,
    ZeroDenominator,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            Self::UnexpectedEnd => write!(f, "unexpected end of input"),
            Self::Expected(what) => write!(f, "expected {what}"),
            Self::UnknownIdentifier(s) => write!(f, "unknown identifier '{s}'"),
            Self::WrongVariable(s) => write!(f, "variable '{s}' not available in this dimension"),
            Self::ElementaryNotAllowed(s) => {
                write!(f, "'{s}' is only allowed with the elementary basis")
            }
            Self::ExponentTooLarge => write!(f, "exponent larger than {MAX_EXPONENT}"),
            Self::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Integer),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
    mode: BasisMode,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e = n.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or(ParseError {
                        position: at,
                        kind: ParseErrorKind::ExponentTooLarge,
                    })?;
                    Ok(base.pow(e))
                }
                Some(_) => Err(ParseError {
                    position: at,
                    kind: ParseErrorKind::Expected("non-negative integer exponent"),
                }),
                None => Err(ParseError {
                    position: at,
                    kind: ParseErrorKind::UnexpectedEnd,
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        let at = self.offset();
        match self.bump() {
            None => Err(ParseError {
                position: at,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.err(ParseErrorKind::Expected("')'")))
                    }
                }
            }
            Some(Tok::Num(n)) => {
                let mut value = Rational::from(n);
                if let (Some(Tok::Slash), Some((_, Tok::Num(_)))) =
                    (self.peek(), self.toks.get(self.pos + 1))
                {
                    self.pos += 1;
                    let dat = self.offset();
                    let Some(Tok::Num(d)) = self.bump() else { unreachable!() };
                    if d == 0 {
                        return Err(ParseError {
                            position: dat,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    value /= Rational::from(d);
                }
                Ok(MultiPoly::constant(self.nvars, Cyclo12::from_rational(value)))
            }
            Some(Tok::Ident(name)) => self.identifier(&name, at),
            Some(_) => {
                self.pos -= 1;
                Err(self.err(ParseErrorKind::Expected("variable, constant, number or '('")))
            }
        }
    }

    fn identifier(&self, name: &str, at: usize) -> Result<MultiPoly, ParseError> {
        let fail = |kind| ParseError { position: at, kind };
        let var_index = match name {
            "X" | "x0" => Some(0),
            "Y" | "x1" => Some(1),
            "Z" | "x2" => Some(2),
            "W" | "x3" => Some(3),
            _ => None,
        };
        if let Some(i) = var_index {
            if i >= self.nvars {
                return Err(fail(ParseErrorKind::WrongVariable(name.to_string())));
            }
            return Ok(MultiPoly::var(self.nvars, i));
        }
        match name {
            "omega" => return Ok(MultiPoly::constant(self.nvars, Cyclo12::omega())),
            "I" => return Ok(MultiPoly::constant(self.nvars, Cyclo12::i())),
            _ => {}
        }
        if let Some(k) = name.strip_prefix('e').and_then(|s| s.parse::<usize>().ok()) {
            if (1..=4).contains(&k) {
                if self.mode != BasisMode::Elementary {
                    return Err(fail(ParseErrorKind::ElementaryNotAllowed(name.to_string())));
                }
                if k > self.nvars {
                    return Err(fail(ParseErrorKind::WrongVariable(name.to_string())));
                }
                return Ok(elementary_symmetric(self.nvars, k));
            }
        }
        Err(fail(ParseErrorKind::UnknownIdentifier(name.to_string())))
    }
}

/// Parses `text` into a polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize, mode: BasisMode) -> Result<MultiPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        nvars,
        mode,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err(match p.peek() {
            Some(Tok::RParen) => ParseErrorKind::UnexpectedChar(')'),
            _ => ParseErrorKind::Expected("operator or end of input"),
        }));
    }
    Ok(out)
}
