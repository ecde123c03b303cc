//! Parser for the canonical string form of [`QRationalFunction`] values.
//!
//! The grammar is a conventional expression language over the single variable
//! `q`: `+ - * / ^` with the usual precedence, parentheses, and nonnegative
//! integer literals. Division is exact field division, so `3/2*q` is the
//! monomial with coefficient 3/2 and `q/(1 + q)` is a genuine quotient; every
//! string produced by `Display` parses back to the same canonical value.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{QPolynomial, QRationalFunction};

const MAX_EXPONENT: usize = 4096;

pub fn parse_rational_function(input: &str) -> Result<QRationalFunction> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expr(&mut self) -> Result<QRationalFunction> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    self.skip_ws();
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.bump();
                    self.skip_ws();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QRationalFunction> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    self.skip_ws();
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.bump();
                    self.skip_ws();
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| self.error("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QRationalFunction> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<QRationalFunction> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let e = self.integer_literal()?;
            let e: usize = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            if e > MAX_EXPONENT {
                return Err(self.error("exponent out of range"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QRationalFunction> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'q') => {
                self.bump();
                Ok(QRationalFunction::var())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer_literal()?;
                Ok(QRationalFunction::from_rational(BigRational::from_integer(
                    n,
                )))
            }
            Some(c) => Err(self.error(&format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer_literal(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        digits
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer literal: {e}")))
    }
}

#[allow(dead_code)]
pub fn parse_polynomial(input: &str) -> Result<QPolynomial> {
    let f = parse_rational_function(input)?;
    match f.as_polynomial() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Parse(
            "expected a polynomial, found a proper quotient".into(),
        )),
    }
}
