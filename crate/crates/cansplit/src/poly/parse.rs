//! Text grammar:
//!
//! ```text
//! expr   = ["+" | "-"] term { ("+" | "-") term }
//! term   = unary { "*" unary | "/" number }
//! unary  = "-" unary | power
//! power  = atom [ "^" digits ]
//! atom   = number | ident | "(" expr ")"
//! number = digits [ "/" digits ]
//! ident  = [A-Za-z][A-Za-z0-9_]*
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rat, VarTable};
use crate::error::{Error, Result};

pub fn parse(text: &str, table: &Arc<VarTable>) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        table,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses over `table` extended by any new identifiers, in order of first
/// appearance.
pub fn parse_with_new_vars(text: &str, table: &Arc<VarTable>) -> Result<Poly> {
    let mut names: Vec<String> = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let name = &text[s..i];
            if !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        } else if b[i].is_ascii_digit() {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    let table = table.extended(&names)?;
    parse(text, &table)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<VarTable>,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        self.pos = at;
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&Rat::new(1.into(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    let save = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    if matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        return Ok(Poly::constant(self.table, Rat::new(n, d)));
                    }
                    self.pos = save;
                }
                Ok(Poly::constant(self.table, Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .table
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
                Ok(Poly::var(self.table, i))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let d = self.digits();
        if d.is_empty() {
            return Err(self.err("expected a number"));
        }
        if matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphabetic() || *c == b'_') {
            return Err(self.err("identifier cannot start with a digit"));
        }
        Ok(d.parse().unwrap())
    }
}
