use super::elem::{FieldElem, Vars};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::Arc;

pub(crate) struct Cursor<'a> {
    pub src: &'a [u8],
    pub pos: usize,
    pub offset: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a str, offset: usize) -> Self {
        Cursor { src: s.as_bytes(), pos: 0, offset }
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset + self.pos, msg: msg.into() })
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_lowercase() {
            self.pos += 1;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_lowercase() || self.src[self.pos].is_ascii_digit()) {
                self.pos += 1;
            }
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        } else {
            None
        }
    }

    pub fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    pub fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let Some(n) = self.integer() else { return self.err("expected integer") };
        let n: i64 = n.try_into().or_else(|_| self.err("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub(crate) struct FieldParser<'v> {
    pub vars: &'v Vars,
}

impl<'v> FieldParser<'v> {
    pub fn expr(&self, c: &mut Cursor) -> Result<FieldElem> {
        let mut acc = self.term(c)?;
        loop {
            if c.eat(b'+') {
                acc = acc.try_add(&self.term(c)?)?;
            } else if c.eat(b'-') {
                acc = acc.try_sub(&self.term(c)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<FieldElem> {
        let mut acc = self.unary(c)?;
        loop {
            if c.eat(b'*') {
                acc = acc.try_mul(&self.unary(c)?)?;
            } else if c.peek() == Some(b'/') {
                let at = c.pos;
                c.pos += 1;
                let d = self.unary(c)?;
                if d.is_zero() {
                    c.pos = at;
                    return c.err("division by zero");
                }
                acc = acc.try_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&self, c: &mut Cursor) -> Result<FieldElem> {
        if c.eat(b'-') {
            return Ok(self.unary(c)?.neg());
        }
        if c.eat(b'+') {
            return self.unary(c);
        }
        let base = self.atom(c)?;
        if c.eat(b'^') {
            let at = c.pos;
            let e = c.signed_int()?;
            return base.pow(e).or_else(|_| {
                c.pos = at;
                c.err("negative power of zero")
            });
        }
        Ok(base)
    }

    fn atom(&self, c: &mut Cursor) -> Result<FieldElem> {
        match c.peek() {
            Some(b'(') => {
                c.pos += 1;
                let e = self.expr(c)?;
                c.expect(b')')?;
                Ok(e)
            }
            Some(d) if d.is_ascii_digit() => {
                let n = c.integer().unwrap();
                Ok(FieldElem::from_rational(BigRational::from_integer(n)))
            }
            Some(d) if d.is_ascii_lowercase() => {
                let at = c.pos;
                let name = c.ident().unwrap();
                if name == "r2" {
                    return Ok(FieldElem::sqrt2());
                }
                FieldElem::var(self.vars, &name).or_else(|_| {
                    c.pos = at;
                    c.err(format!("unknown variable `{}`", name))
                })
            }
            _ => c.err("expected number, variable or `(`"),
        }
    }
}

/// Parse a field expression over the given variable list.
pub fn parse_field(s: &str, vars: &Vars) -> Result<FieldElem> {
    let mut c = Cursor::new(s, 0);
    let e = FieldParser { vars }.expr(&mut c)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(e)
}

/// Variables named in `s`, sorted, excluding the reserved `r2`.
pub fn collect_vars(s: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_lowercase() && (i == 0 || !b[i - 1].is_ascii_alphanumeric()) {
            let start = i;
            while i < b.len() && (b[i].is_ascii_lowercase() || b[i].is_ascii_digit()) {
                i += 1;
            }
            let name = &s[start..i];
            if name != "r2" && !out.iter().any(|v| v == name) {
                out.push(name.to_string());
            }
        } else {
            i += 1;
        }
    }
    out.sort();
    out
}

/// Parse with the variable list inferred from the text.
pub fn parse_field_auto(s: &str) -> Result<FieldElem> {
    parse_field(s, &Arc::new(collect_vars(s)))
}
