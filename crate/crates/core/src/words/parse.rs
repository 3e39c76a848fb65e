use super::{Generator, Root, Word};
use crate::error::Result;
use crate::exactfield::{collect_vars, Cursor, FieldParser, Vars};
use std::sync::Arc;

struct WordParser<'v> {
    vars: &'v Vars,
}

impl<'v> WordParser<'v> {
    fn product(&self, c: &mut Cursor) -> Result<Word> {
        let mut w = self.power(c)?;
        while c.eat(b'*') {
            w = w.mul(&self.power(c)?);
        }
        Ok(w)
    }

    fn power(&self, c: &mut Cursor) -> Result<Word> {
        let w = self.primary(c)?;
        if c.eat(b'^') {
            return Ok(w.pow(c.signed_int()?));
        }
        Ok(w)
    }

    fn primary(&self, c: &mut Cursor) -> Result<Word> {
        match c.peek() {
            Some(b'(') => {
                c.pos += 1;
                let w = self.product(c)?;
                c.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                c.pos += 1;
                let a = self.product(c)?;
                c.expect(b',')?;
                let b = self.product(c)?;
                c.expect(b']')?;
                Ok(a.comm(&b))
            }
            Some(b'1') => {
                c.pos += 1;
                Ok(Word::empty())
            }
            Some(d) if d.is_ascii_lowercase() => {
                let name = c.ident().unwrap();
                let call = c.peek() == Some(b'(');
                match name.as_str() {
                    "x" if call => {
                        c.pos += 1;
                        let s = c.signed_int()?;
                        let Some(alpha) = Root::from_sign(s) else { return c.err("root must be +1 or -1") };
                        c.expect(b',')?;
                        let t = FieldParser { vars: self.vars }.expr(c)?;
                        c.expect(b')')?;
                        Ok(Word::x(alpha, t))
                    }
                    "conj" if call => {
                        c.pos += 1;
                        let g = self.product(c)?;
                        c.expect(b',')?;
                        let w = self.product(c)?;
                        c.expect(b')')?;
                        Ok(g.conj(&w))
                    }
                    _ => Ok(Word::gen(Generator::named(&name))),
                }
            }
            _ => c.err("expected generator, `(`, `[` or `1`"),
        }
    }
}

/// Parse a word; field parameters inside `x(±1, …)` range over `vars`.
pub fn parse_word(s: &str, vars: &Vars) -> Result<Word> {
    let mut c = Cursor::new(s, 0);
    let w = WordParser { vars }.product(&mut c)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(w)
}

/// Variables occurring inside `x(…)` parameters, sorted.
pub fn word_vars(s: &str) -> Vec<String> {
    let b = s.as_bytes();
    let mut inner = String::new();
    let mut i = 0;
    while i + 1 < b.len() {
        let boundary = i == 0 || !b[i - 1].is_ascii_alphanumeric();
        if b[i] == b'x' && boundary && s[i + 1..].trim_start().starts_with('(') {
            let mut j = i + 1 + s[i + 1..].find('(').unwrap() + 1;
            let mut depth = 1;
            let start = j;
            while j < b.len() && depth > 0 {
                match b[j] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    _ => {}
                }
                j += 1;
            }
            inner.push_str(&s[start..j.saturating_sub(1)]);
            inner.push(' ');
            i = j;
        } else {
            i += 1;
        }
    }
    collect_vars(&inner)
}

pub fn parse_word_auto(s: &str) -> Result<Word> {
    parse_word(s, &Arc::new(word_vars(s)))
}
