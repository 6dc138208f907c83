//! Parser for the polynomial text format.
//!
//! Supports `+ - * ^ ( )`, integer literals, rational literals `a/b`, and
//! identifiers from a declared variable list. Multiplication must be written
//! explicitly and exponents are non-negative integer literals.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Poly, Rational, VarList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected {found} at position {pos}, expected {expected}")]
    Unexpected { found: String, expected: &'static str, pos: usize },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("division is only allowed between integer literals (position {pos})")]
    NonLiteralDivision { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Num(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Ident(s), pos));
        } else {
            return Err(ParseError::UnexpectedChar { ch: c, pos });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a VarList,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected { found: self.peek().describe(), expected, pos: self.pos() }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Tok::Slash => return Err(ParseError::NonLiteralDivision { pos: self.pos() }),
                _ => return Ok(acc),
            }
        }
    }

    // unary := ('-' | '+') unary | power
    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := primary ('^' integer)?
    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Num(n) => {
                let e: u32 = n.try_into().map_err(|_| ParseError::ExponentTooLarge { pos })?;
                if e > 10_000 {
                    return Err(ParseError::ExponentTooLarge { pos });
                }
                Ok(base.pow(e))
            }
            Tok::Minus => Err(ParseError::NegativeExponent { pos }),
            other => Err(ParseError::Unexpected {
                found: other.describe(),
                expected: "a non-negative integer exponent",
                pos,
            }),
        }
    }

    // primary := integer ('/' integer)? | identifier | '(' expr ')'
    fn primary(&mut self) -> Result<Poly, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump().0 {
                        Tok::Num(d) if d.is_zero() => return Err(ParseError::DivisionByZero { pos: dpos }),
                        Tok::Num(d) => value /= Rational::from_integer(d),
                        _ => return Err(ParseError::NonLiteralDivision { pos: dpos }),
                    }
                }
                Ok(Poly::constant(self.vars, value))
            }
            Tok::Ident(name) => {
                self.bump();
                Poly::var(self.vars, &name).map_err(|_| ParseError::UnknownVariable { name, pos })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

/// Parses `src` as a polynomial over `vars`.
pub fn parse_polynomial(src: &str, vars: &VarList) -> Result<Poly, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, vars };
    let result = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(result)
}

/// Parses a rational literal such as `-3/4` or `7`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let empty = VarList::new(Vec::<String>::new());
    Ok(parse_polynomial(src, &empty)?.constant_term())
}
