//! Congruences in St₂(k) with explicit relator witnesses.

use super::{Congruence, RelatorProduct};
use crate::error::{Error, Result};
use crate::exactfield::{fe_eq, FieldElem};
use crate::steinberg::{h_elem, psi_letter, w_elem, RelatorInstance, Schema};
use crate::words::{Generator, Letter, Root, Word};

fn x(alpha: Root, t: FieldElem) -> Word {
    Word::x(alpha, t)
}

fn stein(l: &Letter) -> Result<(Root, FieldElem)> {
    match &l.gen {
        Generator::Stein { alpha, t } => Ok((*alpha, t.clone())),
        Generator::Named(n) => Err(Error::NamedGenerator(n.to_string())),
    }
}

/// x_β(a)x_β(b) ≡ x_β(a+b)
pub fn add(beta: Root, a: &FieldElem, b: &FieldElem) -> Result<Congruence> {
    let w = RelatorProduct::single(RelatorInstance::r1(beta, b.clone(), a.clone()), -1)?;
    Congruence::new(x(beta, a.clone()).mul(&x(beta, b.clone())), x(beta, a + b), w)
}

/// x_β(0) ≡ ε
pub fn zero(beta: Root) -> Result<Congruence> {
    let z = FieldElem::zero();
    let w = RelatorProduct::single(RelatorInstance::r1(beta, z.clone(), z.clone()), -1)?;
    Congruence::new(x(beta, z), Word::empty(), w)
}

/// x_β(t)⁻¹ ≡ x_β(−t)
pub fn inv_letter(beta: Root, t: &FieldElem) -> Result<Congruence> {
    let cancel = add(beta, t, &t.neg())?.trans(&zero(beta)?)?;
    Ok(cancel.context(&x(beta, t.clone()).inv(), &Word::empty()).sym())
}

/// Normal form: no inverse letters, no zero parameters, no adjacent letters on the same root.
pub fn collect(w: &Word) -> Result<Congruence> {
    let mut e = Congruence::refl(w.clone());
    loop {
        let cur = e.rhs.letters().to_vec();
        let step = if let Some(i) = cur.iter().position(|l| l.inv) {
            let (b, t) = stein(&cur[i])?;
            Some((i, 1, inv_letter(b, &t)?))
        } else if let Some(i) = cur.iter().position(|l| matches!(&l.gen, Generator::Stein { t, .. } if t.is_zero())) {
            Some((i, 1, zero(stein(&cur[i])?.0)?))
        } else {
            let mut found = None;
            for i in 0..cur.len().saturating_sub(1) {
                let (b1, t1) = stein(&cur[i])?;
                let (b2, t2) = stein(&cur[i + 1])?;
                if b1 == b2 {
                    found = Some((i, 2, add(b1, &t1, &t2)?));
                    break;
                }
            }
            found
        };
        let Some((i, len, c)) = step else { break };
        let prefix = Word::from_letters(cur[..i].iter().cloned());
        let suffix = Word::from_letters(cur[i + len..].iter().cloned());
        e = e.trans(&c.context(&prefix, &suffix))?;
    }
    Ok(e)
}

/// w_α(u)w_α(−u) ≡ ε
pub fn w_inverse(alpha: Root, u: &FieldElem) -> Result<Congruence> {
    let e = collect(&w_elem(alpha, u)?.mul(&w_elem(alpha, &u.neg())?))?;
    if !e.rhs.is_empty() {
        return Err(Error::Internal("w(u)w(-u) does not collect to the identity".into()));
    }
    Ok(e)
}

/// w_α(u)⁻¹ ≡ w_α(−u)
pub fn w_inv_equiv(alpha: Root, u: &FieldElem) -> Result<Congruence> {
    let wu = w_elem(alpha, u)?;
    Ok(w_inverse(alpha, u)?.context(&wu.inv(), &Word::empty()).sym())
}

/// w_α(u)x_α(t)w_α(u)⁻¹ ≡ x_{−α}(−u⁻²t)
pub fn weyl_same(alpha: Root, u: &FieldElem, t: &FieldElem) -> Result<Congruence> {
    let r = RelatorProduct::single(RelatorInstance::r2(alpha, u.clone(), t.clone()), 1)?;
    let z = &u.pow(-2)? * t;
    let e = Congruence::from_relator(r).context(&Word::empty(), &x(-alpha, z.clone()).inv());
    e.trans(&inv_letter(-alpha, &z)?)
}

/// w_α(u) ≡ w_{−α}(−u⁻¹)
pub fn w_swap(alpha: Root, u: &FieldElem) -> Result<Congruence> {
    let wu = w_elem(alpha, u)?;
    let e = weyl_same(alpha, u, u)?
        .mul(&Congruence::refl(wu))
        .mul(&Congruence::refl(x(alpha, u.clone()).inv()));
    e.with_rhs(w_elem(-alpha, &u.inv()?.neg())?)
}

/// w_α(u)^{±1}
#[derive(Clone, Debug)]
pub struct WBlock {
    pub alpha: Root,
    pub u: FieldElem,
    pub inv: bool,
}

impl WBlock {
    pub fn new(alpha: Root, u: FieldElem, inv: bool) -> Self {
        WBlock { alpha, u, inv }
    }

    pub fn word(&self) -> Result<Word> {
        let w = w_elem(self.alpha, &self.u)?;
        Ok(if self.inv { w.inv() } else { w })
    }

    pub fn inverse(&self) -> Self {
        WBlock { alpha: self.alpha, u: self.u.clone(), inv: !self.inv }
    }
}

pub fn blocks_word(bs: &[WBlock]) -> Result<Word> {
    let mut w = Word::empty();
    for b in bs {
        w = w.mul(&b.word()?);
    }
    Ok(w)
}

pub fn blocks_inverse(bs: &[WBlock]) -> Vec<WBlock> {
    bs.iter().rev().map(WBlock::inverse).collect()
}

/// h_α(u) = w_α(u)w_α(1)⁻¹ as blocks.
pub fn h_blocks(alpha: Root, u: &FieldElem) -> Vec<WBlock> {
    vec![WBlock::new(alpha, u.clone(), false), WBlock::new(alpha, FieldElem::one(), true)]
}

/// B x_β(t) B⁻¹ ≡ x_{β'}(t') for a single block B; returns the congruence and (β', t').
pub fn conj_block(b: &WBlock, beta: Root, t: &FieldElem) -> Result<(Congruence, Root, FieldElem)> {
    if b.inv {
        let e = w_inv_equiv(b.alpha, &b.u)?.conj_equiv(&x(beta, t.clone()));
        let (f, b2, t2) = conj_block(&WBlock::new(b.alpha, b.u.neg(), false), beta, t)?;
        return Ok((e.trans(&f)?, b2, t2));
    }
    if beta == b.alpha {
        let t2 = (&b.u.pow(-2)? * t).neg();
        return Ok((weyl_same(b.alpha, &b.u, t)?, -beta, t2));
    }
    let u2 = b.u.inv()?.neg();
    let e = w_swap(b.alpha, &b.u)?.conj_equiv(&x(beta, t.clone()));
    let t2 = (&u2.pow(-2)? * t).neg();
    Ok((e.trans(&weyl_same(beta, &u2, t)?)?, -beta, t2))
}

/// g x_β(t) g⁻¹ ≡ x_{β'}(t') for g a product of blocks.
pub fn conj_blocks(bs: &[WBlock], beta: Root, t: &FieldElem) -> Result<(Congruence, Root, FieldElem)> {
    let Some((last, rest)) = bs.split_last() else {
        return Ok((Congruence::refl(x(beta, t.clone())), beta, t.clone()));
    };
    let (mut e, mut b, mut s) = conj_block(last, beta, t)?;
    for blk in rest.iter().rev() {
        let (f, b2, s2) = conj_block(blk, b, &s)?;
        e = e.conj_by(&blk.word()?).trans(&f)?;
        b = b2;
        s = s2;
    }
    Ok((e, b, s))
}

/// g z g⁻¹ ≡ z' letterwise, for g a product of blocks and z any Steinberg word.
pub fn conj_word_by_blocks(bs: &[WBlock], z: &Word) -> Result<Congruence> {
    let mut acc = Congruence::refl(Word::empty());
    let g = blocks_word(bs)?;
    for l in z.letters() {
        let (b, t) = stein(l)?;
        let (e, _, _) = conj_blocks(bs, b, &t)?;
        let e = if l.inv { e.inv() } else { e };
        acc = acc.mul(&e);
    }
    // acc.lhs is the letterwise product; it reduces to g z g⁻¹.
    if acc.lhs != g.conj(z) {
        return Err(Error::Internal("letterwise conjugation mismatch".into()));
    }
    Ok(acc)
}

/// Witness that [c, z] ∈ R when c ≡ c₀ (a block product acting trivially on root groups).
pub fn central_comm(c: &Congruence, c0: &[WBlock], z: &Word) -> Result<RelatorProduct> {
    if c.rhs != blocks_word(c0)? {
        return Err(Error::Internal("central_comm: block word mismatch".into()));
    }
    let e = c.conj_equiv(z).trans(&conj_word_by_blocks(c0, z)?)?;
    if e.rhs != *z {
        return Err(Error::Internal(format!("{} does not centralize {}", c.rhs, z)));
    }
    Ok(e.witness)
}

/// h_α(a) x_β(t) h_α(a)⁻¹ ≡ x_β(a^{±2} t)
pub fn h_conj(alpha: Root, a: &FieldElem, beta: Root, t: &FieldElem) -> Result<(Congruence, FieldElem)> {
    let (e, b, s) = conj_blocks(&h_blocks(alpha, a), beta, t)?;
    debug_assert!(b == beta);
    let expected = if beta == alpha { &(a * a) * t } else { &(a * a).inv()? * t };
    if !fe_eq(&s, &expected) {
        return Err(Error::Internal("h conjugation scalar".into()));
    }
    Ok((e, s))
}

/// [h_α(a), x_α(t/(a²−1))] ≡ x_α(t)
pub fn eq1(alpha: Root, a: &FieldElem, t: &FieldElem) -> Result<Congruence> {
    let d = &(a * a) - &FieldElem::one();
    if d.is_zero() {
        return Err(Error::DegeneratePsi);
    }
    let tp = t.try_div(&d)?;
    let (e1, s) = h_conj(alpha, a, alpha, &tp)?;
    let e = e1.mul(&inv_letter(alpha, &tp)?).trans(&add(alpha, &s, &tp.neg())?)?;
    debug_assert!(e.lhs == h_elem(alpha, a)?.comm(&x(alpha, tp.clone())));
    Congruence::new(e.lhs, x(alpha, t.clone()), e.witness)
}

/// ψ(w) ≡ w for a Steinberg word.
pub fn psi_defect(w: &Word, a: &FieldElem) -> Result<Congruence> {
    let mut acc = Congruence::refl(Word::empty());
    for l in w.letters() {
        let (b, t) = stein(l)?;
        let e = eq1(b, a, &t)?;
        debug_assert!(e.lhs == psi_letter(b, &t, a)?);
        acc = acc.mul(&if l.inv { e.inv() } else { e });
    }
    Ok(acc)
}

/// Expresses R3 and R4 instances through R1 and R2.
pub fn derive(r: &RelatorInstance) -> Result<RelatorProduct> {
    r.check_units()?;
    let [p, q] = &r.params;
    let a = r.alpha;
    match r.schema {
        Schema::R1 | Schema::R2 => RelatorProduct::single(r.clone(), 1),
        Schema::R3 => {
            let y = x(-a, &p.pow(-2)? * q);
            let r2 = RelatorProduct::single(RelatorInstance::r2(a, p.clone(), q.clone()), 1)?;
            Ok(r2.mul(&w_inverse(a, p)?.witness.conj(&y.inv())))
        }
        Schema::R4 => {
            let c = x(a, (p * q).neg());
            Ok(RelatorProduct::single(RelatorInstance::r1(-a, p.inv()?, q.inv()?), 1)?.conj(&c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{verify_relator_product, Presentation};
    use crate::exactfield::FieldCtx;

    fn check(c: &Congruence) {
        assert_eq!(c.witness.target, c.lhs.mul(&c.rhs.inv()));
        let v = verify_relator_product(&Presentation::Steinberg, &c.witness).unwrap();
        assert!(v.ok, "residual {}", v.residual);
    }

    #[test]
    fn basic_lemmas() {
        let ctx = FieldCtx::new(&["u", "t"]);
        let (u, t) = (ctx.var("u"), ctx.var("t"));
        for a in [Root::Pos, Root::Neg] {
            check(&add(a, &u, &t).unwrap());
            check(&inv_letter(a, &t).unwrap());
            let wi = w_inverse(a, &u).unwrap();
            check(&wi);
            assert_eq!(wi.cost(), 6);
            check(&w_swap(a, &u).unwrap());
            check(&weyl_same(a, &u, &t).unwrap());
            let two = FieldElem::from_int(2);
            check(&eq1(a, &two, &t).unwrap());
            for b in [Root::Pos, Root::Neg] {
                let (e, _) = h_conj(a, &u, b, &t).unwrap();
                check(&e);
            }
        }
    }

    #[test]
    fn derivations_reduce() {
        let ctx = FieldCtx::new(&["u", "t"]);
        let (u, t) = (ctx.var("u"), ctx.var("t"));
        for a in [Root::Pos, Root::Neg] {
            for r in [RelatorInstance::r3(a, u.clone(), t.clone()), RelatorInstance::r4(a, u.clone(), t.clone())] {
                let d = derive(&r).unwrap();
                assert_eq!(d.evaluate().unwrap(), r.expand().unwrap());
            }
        }
    }

    #[test]
    fn centrality_of_trivial_block_products() {
        let ctx = FieldCtx::new(&["s", "t"]);
        let (s, t) = (ctx.var("s"), ctx.var("t"));
        let c0 = vec![WBlock::new(Root::Pos, s.neg(), false), WBlock::new(Root::Pos, s.clone(), true)];
        let z = Word::x(Root::Neg, t.clone()).mul(&Word::x(Root::Pos, s.clone()).inv());
        let c = Congruence::refl(blocks_word(&c0).unwrap());
        let w = central_comm(&c, &c0, &z).unwrap();
        assert_eq!(w.target, c.lhs.comm(&z));
        assert!(verify_relator_product(&Presentation::Steinberg, &w).unwrap().ok);
    }
}
