//! Freely reduced words in a free group.

mod parse;

pub use parse::{parse_word, parse_word_auto, word_vars};

use crate::error::{Error, Result};
use crate::exactfield::{fe_eq, FieldElem};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Root {
    Pos,
    Neg,
}

impl Root {
    pub fn from_sign(s: i64) -> Option<Root> {
        match s {
            1 => Some(Root::Pos),
            -1 => Some(Root::Neg),
            _ => None,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Root::Pos => 1,
            Root::Neg => -1,
        }
    }

    pub fn opp(self) -> Root {
        match self {
            Root::Pos => Root::Neg,
            Root::Neg => Root::Pos,
        }
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        self.opp()
    }
}

#[derive(Clone, Debug)]
pub enum Generator {
    Named(Arc<str>),
    Stein { alpha: Root, t: FieldElem },
}

impl Generator {
    pub fn named(s: &str) -> Self {
        Generator::Named(Arc::from(s))
    }

    pub fn stein(alpha: Root, t: FieldElem) -> Self {
        Generator::Stein { alpha, t }
    }
}

impl PartialEq for Generator {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Generator::Named(a), Generator::Named(b)) => a == b,
            (Generator::Stein { alpha: a, t: s }, Generator::Stein { alpha: b, t }) => a == b && fe_eq(s, t),
            _ => false,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Named(s) => write!(f, "{}", s),
            Generator::Stein { alpha, t } => write!(f, "x({},{})", if *alpha == Root::Pos { "+1" } else { "-1" }, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Letter {
    pub gen: Generator,
    pub inv: bool,
}

impl Letter {
    pub fn sign(&self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen.clone(), inv: !self.inv }
    }

    fn cancels(&self, o: &Letter) -> bool {
        self.inv != o.inv && self.gen == o.gen
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Word(vec![Letter { gen: g, inv: false }])
    }

    pub fn named(s: &str) -> Self {
        Self::gen(Generator::named(s))
    }

    /// x_α(t)
    pub fn x(alpha: Root, t: FieldElem) -> Self {
        Self::gen(Generator::stein(alpha, t))
    }

    pub fn from_letters(ls: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in ls {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.0.last().map_or(false, |top| top.cancels(&l)) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        w.0.reserve(o.len());
        for l in &o.0 {
            w.push(l.clone());
        }
        w
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn conj(&self, w: &Word) -> Word {
        self.mul(w).mul(&self.inv())
    }

    pub fn comm(&self, o: &Word) -> Word {
        self.mul(o).mul(&self.inv()).mul(&o.inv())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Homomorphic image under a letter assignment.
    pub fn map(&self, f: &mut dyn FnMut(&Generator) -> Result<Word>) -> Result<Word> {
        let mut out = Word::empty();
        for l in &self.0 {
            let img = f(&l.gen)?;
            out = out.mul(&if l.inv { img.inv() } else { img });
        }
        Ok(out)
    }

    /// Exponent sums per distinct generator; all zero iff the word lies in [F,F].
    pub fn abelianization(&self) -> Vec<(Generator, i64)> {
        let mut acc: Vec<(Generator, i64)> = Vec::new();
        for l in &self.0 {
            match acc.iter_mut().find(|(g, _)| *g == l.gen) {
                Some((_, n)) => *n += l.sign(),
                None => acc.push((l.gen.clone(), l.sign())),
            }
        }
        acc.retain(|(_, n)| *n != 0);
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

pub fn w_mul(a: &Word, b: &Word) -> Word {
    a.mul(b)
}

pub fn w_inv(a: &Word) -> Word {
    a.inv()
}

pub fn w_conj(g: &Word, w: &Word) -> Word {
    g.conj(w)
}

pub fn w_comm(a: &Word, b: &Word) -> Word {
    a.comm(b)
}

pub fn w_map(a: &Word, f: &mut dyn FnMut(&Generator) -> Result<Word>) -> Result<Word> {
    a.map(f)
}

/// Letter assignment that fails on generators outside the given table.
pub fn table_map<'a>(table: &'a [(Generator, Word)]) -> impl FnMut(&Generator) -> Result<Word> + 'a {
    move |g| {
        table
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, w)| w.clone())
            .ok_or_else(|| Error::UnmappedGenerator(g.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;

    fn x(c: &FieldCtx, s: &str) -> Word {
        Word::x(Root::Pos, c.parse(s).unwrap())
    }

    #[test]
    fn cancellation_uses_field_equality() {
        let c = FieldCtx::new(&["s", "t"]);
        assert!(x(&c, "t").mul(&x(&c, "t").inv()).is_empty());
        assert_eq!(x(&c, "s").mul(&x(&c, "t")).len(), 2);
        let r_st = x(&c, "s+t").mul(&x(&c, "s").inv()).mul(&x(&c, "t").inv());
        let r_ts = x(&c, "t+s").mul(&x(&c, "t").inv()).mul(&x(&c, "s").inv());
        assert_eq!(r_ts.inv().mul(&r_st), x(&c, "s").comm(&x(&c, "t")));
        assert_eq!(r_ts.inv().mul(&r_st).len(), 4);
    }

    #[test]
    fn inverse_and_conjugation() {
        let c = FieldCtx::new(&["s", "t"]);
        assert!(Word::empty().inv().is_empty());
        let w = x(&c, "s").mul(&Word::x(Root::Neg, c.var("t")));
        assert_eq!(w.inv().to_string(), "x(-1,t)^-1*x(+1,s)^-1");
        assert_eq!(Word::empty().conj(&w), w);
        assert!(w.conj(&Word::empty()).is_empty());
        assert_eq!(x(&c, "s").conj(&x(&c, "t")).len(), 3);
        assert!(w.comm(&w).is_empty());
    }

    #[test]
    fn zero_parameter_letter_is_literal() {
        let c = FieldCtx::new(&["s"]);
        assert_eq!(x(&c, "0").len(), 1);
    }

    #[test]
    fn map_with_missing_image_fails() {
        let w = Word::named("a").mul(&Word::named("b"));
        let table = vec![(Generator::named("a"), Word::named("b"))];
        assert!(w.map(&mut table_map(&table)).is_err());
    }
}
