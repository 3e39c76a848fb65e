use super::{eta_elem, expand_relator, pi_eval, w_elem, RelatorInstance};
use crate::error::Result;
use crate::exactfield::{FieldCtx, FieldElem};
use crate::words::{Root, Word};
use serde::Serialize;

pub struct GhysWords {
    pub u: FieldElem,
    pub v: FieldElem,
    pub lhs: Word,
    pub rhs: Word,
    pub relators_used: Vec<RelatorInstance>,
}

fn rel(r: RelatorInstance, used: &mut Vec<RelatorInstance>) -> Result<Word> {
    let w = expand_relator(&r)?;
    used.push(r);
    Ok(w)
}

/// R₁(u,v) together with the relators it uses, in order of appearance.
pub fn r1_block(alpha: Root, u: &FieldElem, v: &FieldElem) -> Result<(Word, Vec<RelatorInstance>)> {
    let x = |t: FieldElem| Word::x(alpha, t);
    let y = |t: FieldElem| Word::x(-alpha, t);
    let uv = (u * v).neg();
    let mut used = Vec::new();
    let w = x(uv.clone())
        .inv()
        .mul(&rel(RelatorInstance::r1(alpha, u * u, u.neg()), &mut used)?)
        .mul(&y(u.inv()?).inv())
        .mul(&x(u.neg()).inv())
        .mul(&rel(RelatorInstance::r3(alpha, u.neg(), u * u), &mut used)?)
        .mul(&rel(RelatorInstance::r1(alpha, v.neg(), u.neg()), &mut used)?)
        .mul(&x(u.neg()))
        .mul(&y(u.inv()?))
        .mul(&x(uv));
    Ok((w, used))
}

/// R₂(u,v) together with the relators it uses, in order of appearance.
pub fn r2_block(alpha: Root, u: &FieldElem, v: &FieldElem) -> Result<(Word, Vec<RelatorInstance>)> {
    let x = |t: FieldElem| Word::x(alpha, t);
    let xuv = x((u * v).neg());
    let wv = w_elem(alpha, v)?;
    let mut used = Vec::new();
    let w = xuv
        .mul(&rel(RelatorInstance::r1(-alpha, u.inv()?, v.inv()?), &mut used)?)
        .mul(&xuv.inv())
        .mul(&rel(RelatorInstance::r1(alpha, v.neg(), v * v), &mut used)?)
        .mul(&wv.inv())
        .mul(&rel(RelatorInstance::r3(alpha, v.clone(), v * v), &mut used)?)
        .mul(&wv);
    Ok((w, used))
}

/// Both sides of the commutation identity for η_α(u), η_α(v) with v = 1−u.
pub fn ghys_words(alpha: Root) -> Result<GhysWords> {
    let ctx = FieldCtx::new(&["u"]);
    let u = ctx.var("u");
    let v = &FieldElem::one() - &u;
    let lhs = eta_elem(alpha, &u)?.comm(&eta_elem(alpha, &v)?);
    let (r1uv, mut used) = r1_block(alpha, &u, &v)?;
    let (r1vu, u2) = r1_block(alpha, &v, &u)?;
    let (r2uv, u3) = r2_block(alpha, &u, &v)?;
    let (r2vu, u4) = r2_block(alpha, &v, &u)?;
    used.extend(u3);
    used.extend(u4);
    used.extend(u2);
    let w = w_elem(alpha, &(&u * &v).neg())?;
    let rhs = r1uv.mul(&w.inv()).mul(&r2uv).mul(&r2vu.inv()).mul(&w).mul(&r1vu.inv());
    Ok(GhysWords { u, v, lhs, rhs, relators_used: used })
}

#[derive(Clone, Debug, Serialize)]
pub struct GhysReport {
    pub alpha: i64,
    pub free_equal: bool,
    pub pi_equal: bool,
    pub residual: String,
    pub relator_count: usize,
    pub lhs_letters: usize,
    pub rhs_letters: usize,
}

pub fn verify_ghys(alpha: Root) -> Result<GhysReport> {
    let g = ghys_words(alpha)?;
    let diff = g.lhs.mul(&g.rhs.inv());
    Ok(GhysReport {
        alpha: alpha.sign(),
        free_equal: diff.is_empty(),
        pi_equal: pi_eval(&diff)?.is_identity(),
        residual: diff.to_string(),
        relator_count: g.relators_used.len(),
        lhs_letters: g.lhs.len(),
        rhs_letters: g.rhs.len(),
    })
}
