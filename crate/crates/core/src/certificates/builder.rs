use super::{CommutatorFactor, CommutatorProduct, RelatorProduct};
use crate::error::{Error, Result};
use crate::words::Word;

/// [f, ρ]^sign as a one-factor certificate.
pub fn xi(f: &Word, r: &RelatorProduct, sign: i8) -> CommutatorProduct {
    CommutatorProduct::single(CommutatorFactor::Commutator { f: f.clone(), witness: r.clone(), sign })
}

/// Certificate for [gρ, h]·[g, h]⁻¹.
pub fn lift_left(g: &Word, r: &RelatorProduct, h: &Word) -> CommutatorProduct {
    xi(&g.conj(h), &r.conj(g), -1)
}

/// Certificate for [g, hσ]·[g, h]⁻¹.
pub fn lift_right(g: &Word, h: &Word, s: &RelatorProduct) -> CommutatorProduct {
    xi(&h.conj(g), &s.conj(h), 1).conj(&g.comm(h))
}

/// The Hall–Witt product [[x,y],x⁻¹cx]·[[c,x],c⁻¹yc]·[[y,c],y⁻¹xy] read with
/// [a,b] = a⁻¹b⁻¹ab; it reduces to ε in the free group.
pub fn hall_witt_word(x: &Word, y: &Word, c: &Word) -> Word {
    let lc = |a: &Word, b: &Word| a.inv().comm(&b.inv());
    let a = lc(&lc(x, y), &x.inv().conj(c));
    let b = lc(&lc(c, x), &c.inv().conj(y));
    let d = lc(&lc(y, c), &y.inv().conj(x));
    a.mul(&b).mul(&d)
}

/// The same identity for [a,b] = aba⁻¹b⁻¹: [[y,x],xcx⁻¹]·[[x,c],cyc⁻¹]·[[c,y],yxy⁻¹].
pub fn hall_witt_word_right(x: &Word, y: &Word, c: &Word) -> Word {
    let a = y.comm(x).comm(&x.conj(c));
    let b = x.comm(c).comm(&c.conj(y));
    let d = c.comm(y).comm(&y.conj(x));
    a.mul(&b).mul(&d)
}

/// [[y,x], xcx⁻¹] when c commutes with x and y modulo R.
///
/// `wxc` witnesses [x,c] and `wcy` witnesses [c,y]; costs 2.
pub fn hall_witt_cert(x: &Word, y: &Word, c: &Word, wxc: &RelatorProduct, wcy: &RelatorProduct) -> CommutatorProduct {
    xi(&c.conj(y), wxc, -1).mul(&xi(&y.conj(x), wcy, -1)).inv()
}

/// Accumulates commutator factors against a fixed target.
///
/// Invariant: target = (product of pushed factors)·rest.
pub struct XiBuilder {
    target: Word,
    cert: CommutatorProduct,
    rest: Word,
}

impl XiBuilder {
    pub fn new(target: Word) -> Self {
        XiBuilder { rest: target.clone(), target, cert: CommutatorProduct::empty() }
    }

    pub fn rest(&self) -> &Word {
        &self.rest
    }

    pub fn cost(&self) -> usize {
        self.cert.cost()
    }

    pub fn push(&mut self, c: &CommutatorProduct) {
        self.rest = c.target.inv().mul(&self.rest);
        self.cert = self.cert.mul(c);
    }

    /// Replace `from` by `to` inside rest = prefix·from·suffix, given a certificate for from·to⁻¹.
    pub fn rewrite(&mut self, prefix: &Word, from: &Word, suffix: &Word, to: &Word, local: &CommutatorProduct) -> Result<()> {
        if prefix.mul(from).mul(suffix) != self.rest {
            return Err(Error::Internal("rewrite: segments do not reproduce the remaining word".into()));
        }
        if local.target != from.mul(&to.inv()) {
            return Err(Error::Internal("rewrite: local certificate has the wrong target".into()));
        }
        self.push(&local.conj(prefix));
        debug_assert!(self.rest == prefix.mul(to).mul(suffix));
        Ok(())
    }

    pub fn finish(self) -> Result<CommutatorProduct> {
        if !self.rest.is_empty() {
            return Err(Error::Internal(format!("builder left a remainder of length {}", self.rest.len())));
        }
        let mut c = self.cert;
        c.target = self.target;
        Ok(c)
    }
}
