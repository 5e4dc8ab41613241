//! Recursive-descent parser for the operator expression grammar.
//!
//! ```text
//! expr   := "-"? term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" (uint | "(" "-"? uint ("/" uint)? ")"))?
//! atom   := "x" | "d" | "P" | "I" | "gp" | "gm" | "g1" | "i" | uint
//!         | symbol | "sqrt" "(" expr ")" | "(" expr ")"
//! ```
//!
//! Division and fractional or negative powers apply to scalars only, and a
//! divisor must be a single scalar monomial.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use super::{Blade, OperatorPoly};
use crate::scalar::{Rational, ScalarError, ScalarSum};

const KNOWN_SYMBOLS: [&str; 7] = ["beta", "k", "E", "m", "pi", "lambda", "kw"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { offset: usize, name: String },
    #[error("scalar required at byte {offset}: {message}")]
    NotScalar { offset: usize, message: String },
    #[error("scalar arithmetic failed at byte {offset}: {source}")]
    Scalar {
        offset: usize,
        #[source]
        source: ScalarError,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownSymbol { offset, .. }
            | ParseError::NotScalar { offset, .. }
            | ParseError::Scalar { offset, .. } => *offset,
        }
    }
}

/// With `strict`, identifiers outside the fixed symbol list and `extra_symbols`
/// are rejected.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub strict: bool,
    pub extra_symbols: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
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

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("`{s}`"),
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

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = text[start..pos].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                out.push((start, Tok::Ident(text[start..pos].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    opts: &'a ParseOptions,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: format!("expected {wanted}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn expr(&mut self) -> Result<OperatorPoly, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let divisor = self.factor()?;
                    let m = divisor
                        .as_scalar()
                        .and_then(|s| s.as_monomial().cloned())
                        .ok_or_else(|| ParseError::NotScalar {
                            offset: at,
                            message: "divisor must be a nonzero scalar monomial".into(),
                        })?;
                    let inv = m.inverse().map_err(|source| ParseError::Scalar { offset: at, source })?;
                    acc = acc.scale(&ScalarSum::from(inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(Rational::from_integer(self.uint()?));
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let num = self.uint()?;
        let den = if *self.peek() == Tok::Slash {
            self.bump();
            let at = self.offset();
            let d = self.uint()?;
            if d == BigInt::from(0) {
                return Err(ParseError::Scalar {
                    offset: at,
                    source: ScalarError::DivisionByZero,
                });
            }
            d
        } else {
            BigInt::one()
        };
        self.expect(Tok::RParen, "`)`")?;
        let r = Rational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn factor(&mut self) -> Result<OperatorPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exp = self.exponent()?;
        if exp.is_integer() && !exp.is_negative() {
            let n: u32 = exp.to_integer().try_into().map_err(|_| ParseError::Syntax {
                offset: at,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(n));
        }
        let m = base
            .as_scalar()
            .and_then(|s| s.as_monomial().cloned())
            .ok_or_else(|| ParseError::NotScalar {
                offset: at,
                message: "fractional or negative powers need a scalar monomial".into(),
            })?;
        let powered = m.pow(&exp).map_err(|source| ParseError::Scalar { offset: at, source })?;
        Ok(OperatorPoly::scalar(powered.into()))
    }

    fn atom(&mut self) -> Result<OperatorPoly, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(OperatorPoly::scalar(ScalarSum::from_rational(Rational::from_integer(n))))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(OperatorPoly::x()),
                    "d" => Ok(OperatorPoly::d()),
                    "P" => Ok(OperatorPoly::parity()),
                    "I" => Ok(OperatorPoly::identity()),
                    "gp" => Ok(OperatorPoly::blade(Blade::GammaPlus)),
                    "gm" => Ok(OperatorPoly::blade(Blade::GammaMinus)),
                    "g1" => Ok(OperatorPoly::blade(Blade::Gamma1)),
                    "i" => Ok(OperatorPoly::scalar(ScalarSum::i())),
                    "sqrt" => {
                        self.expect(Tok::LParen, "`(` after sqrt")?;
                        let inner_at = self.offset();
                        let inner = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        let s = inner.as_scalar().ok_or_else(|| ParseError::NotScalar {
                            offset: inner_at,
                            message: "sqrt takes a scalar argument".into(),
                        })?;
                        let root = s
                            .sqrt()
                            .map_err(|source| ParseError::Scalar { offset: inner_at, source })?;
                        Ok(OperatorPoly::scalar(root))
                    }
                    _ if *self.peek() == Tok::LParen => Err(ParseError::UnknownSymbol { offset: at, name }),
                    _ => {
                        let known = KNOWN_SYMBOLS.contains(&name.as_str())
                            || self.opts.extra_symbols.iter().any(|s| *s == name);
                        if self.opts.strict && !known {
                            return Err(ParseError::UnknownSymbol { offset: at, name });
                        }
                        Ok(OperatorPoly::scalar(ScalarSum::symbol(&name)))
                    }
                }
            }
            _ => self.unexpected("an operand"),
        }
    }
}

/// Parses with default (non-strict) options.
pub fn parse_operator(text: &str) -> Result<OperatorPoly, ParseError> {
    parse_operator_with(text, &ParseOptions::default())
}

pub fn parse_operator_with(text: &str, opts: &ParseOptions) -> Result<OperatorPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, opts };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected("an operator or end of input");
    }
    Ok(out)
}
