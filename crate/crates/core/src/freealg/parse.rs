//! Text syntax for scalars and polynomials: `tau*e1*e2 - e1`,
//! `(tau^2-1)/(tau-1)`, `1/2*e1^2`. Multiplication is explicit; `^` takes an
//! integer exponent (negative only for scalars); division only by scalars.

use num_bigint::BigInt;

use crate::coeff::{Field, Rational, Scalar};

use super::poly::Poly;
use super::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(input: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().unwrap()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(Lexer { toks, pos: 0 })
}

struct Parser<'a> {
    lex: Lexer,
    alphabet: &'a Alphabet,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.lex.toks[self.lex.pos].0
    }

    fn col(&self) -> usize {
        self.lex.toks[self.lex.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.lex.toks[self.lex.pos].0.clone();
        if self.lex.pos + 1 < self.lex.toks.len() {
            self.lex.pos += 1;
        }
        t
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column, message: message.into() })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump();
                    let col = self.col();
                    let d = self.unary()?;
                    let s = self.as_scalar(&d, col, "division by a non-scalar")?;
                    match s.recip() {
                        Ok(inv) => acc = acc.scale(&inv),
                        Err(_) => return self.err(col, "division by zero"),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base_col = self.col();
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == &Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        let col = self.col();
        let exp = match self.bump() {
            Tok::Num(n) => n,
            _ => return self.err(col, "expected integer exponent"),
        };
        let exp: u32 = match u32::try_from(exp) {
            Ok(e) if e <= 64 => e,
            _ => return self.err(col, "exponent too large"),
        };
        let base = if negative {
            let s = self.as_scalar(&base, base_col, "negative power of a non-scalar")?;
            match s.recip() {
                Ok(inv) => Poly::constant(inv),
                Err(_) => return self.err(base_col, "division by zero"),
            }
        } else {
            base
        };
        let mut acc = Poly::constant(self.field.one());
        for _ in 0..exp {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Num(n) => Ok(Poly::constant(self.field.from_rational(Rational::from_integer(n)))),
            Tok::Ident(name) => {
                if let Some(l) = self.alphabet.letter(&name) {
                    return Ok(Poly::word(self.field, Word::letter(l)));
                }
                if self.field.param() == Some(name.as_str()) {
                    return Ok(Poly::constant(self.field.generator().unwrap()));
                }
                self.err(col, format!("unknown symbol '{name}'"))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                let c = self.col();
                match self.bump() {
                    Tok::Op(')') => Ok(inner),
                    _ => self.err(c, "expected ')'"),
                }
            }
            Tok::End => self.err(col, "unexpected end of input"),
            Tok::Op(o) => self.err(col, format!("unexpected '{o}'")),
        }
    }

    fn as_scalar(&self, p: &Poly, col: usize, msg: &str) -> Result<Scalar, ParseError> {
        if p.terms().all(|(w, _)| w.is_empty()) {
            Ok(p.constant_term())
        } else {
            self.err(col, msg)
        }
    }
}

pub fn parse_poly(input: &str, alphabet: &Alphabet, field: &Field) -> Result<Poly, ParseError> {
    let lex = lex(input)?;
    let mut p = Parser { lex, alphabet, field };
    let out = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err(p.col(), "unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_scalar(input: &str, field: &Field) -> Result<Scalar, ParseError> {
    let empty = Alphabet::new(Vec::<String>::new());
    let p = parse_poly(input, &empty, field)?;
    Ok(p.constant_term())
}

/// Parses `3`, `-2`, `3/2` into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational, ParseError> {
    let s = parse_scalar(input, &Field::Rationals)?;
    match s {
        Scalar::Rational(r) => Ok(r),
        Scalar::Function(_) => unreachable!(),
    }
}
