//! Certificates for commutators of root elements.

use super::builder::{hall_witt_cert, lift_left, lift_right, xi, XiBuilder};
use super::lemmas::{self, central_comm, eq1, h_conj, w_inverse, WBlock};
use super::{CommutatorFactor, CommutatorProduct, Congruence, RelatorProduct};
use crate::error::Result;
use crate::exactfield::FieldElem;
use crate::steinberg::{h_elem, w_elem, RelatorInstance};
use crate::words::{Root, Word};

/// How translation commutators [x_α(s), x_α(t)] are certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslationMode {
    /// Imported block of cost 2 (the topological lemma).
    Axiom,
    /// Explicit dilation argument with h_α(√2), cost 9.
    Constructive,
}

pub const TRANSLATION_IMPORT: &str = "translations-xi2";

fn x(alpha: Root, t: FieldElem) -> Word {
    Word::x(alpha, t)
}

fn cm(alpha: Root, p: &FieldElem, q: &FieldElem) -> Word {
    x(alpha, p.clone()).comm(&x(alpha, q.clone()))
}

/// r¹(t,s)⁻¹·r¹(s,t) = [x_α(s), x_α(t)]
pub fn translation_pair(alpha: Root, s: &FieldElem, t: &FieldElem) -> Result<RelatorProduct> {
    let a = RelatorProduct::single(RelatorInstance::r1(alpha, t.clone(), s.clone()), -1)?;
    let b = RelatorProduct::single(RelatorInstance::r1(alpha, s.clone(), t.clone()), 1)?;
    Ok(a.mul(&b))
}

pub fn translation_cert(alpha: Root, s: &FieldElem, t: &FieldElem, mode: TranslationMode) -> Result<CommutatorProduct> {
    match mode {
        TranslationMode::Axiom => {
            let witness = translation_pair(alpha, s, t)?;
            Ok(CommutatorProduct::single(CommutatorFactor::Imported {
                target: witness.target.clone(),
                witness,
                cost: 2,
                source: TRANSLATION_IMPORT.to_string(),
            }))
        }
        TranslationMode::Constructive => dilation_cert(alpha, s, t),
    }
}

/// C(p,b₁)·C(p,b₂)·C(p,b₁+b₂)⁻¹, two commutators.
fn bilin_right(alpha: Root, p: &FieldElem, b1: &FieldElem, b2: &FieldElem) -> Result<CommutatorProduct> {
    let k = xi(&x(alpha, b1.clone()), &translation_pair(alpha, p, b2)?, 1);
    let rho = lemmas::add(alpha, b1, b2)?.sym().left_quotient();
    let l = lift_right(&x(alpha, p.clone()), &x(alpha, b1 + b2), &rho);
    Ok(k.inv().conj(&cm(alpha, p, b1)).mul(&l))
}

/// C(b₂,q)·C(b₁,q)·C(b₁+b₂,q)⁻¹, two commutators.
fn bilin_left(alpha: Root, b1: &FieldElem, b2: &FieldElem, q: &FieldElem) -> Result<CommutatorProduct> {
    let k = xi(&x(alpha, b1.clone()), &translation_pair(alpha, b2, q)?, 1);
    let rho = lemmas::add(alpha, b1, b2)?.sym().left_quotient();
    let l = lift_left(&x(alpha, b1 + b2), &rho, &x(alpha, q.clone()));
    Ok(k.inv().mul(&l))
}

/// [x_α(s), x_α(t)] from the dilation H = h_α(√2): H x(z) H⁻¹ ≡ x(2z).
fn dilation_cert(alpha: Root, s: &FieldElem, t: &FieldElem) -> Result<CommutatorProduct> {
    let r2 = FieldElem::sqrt2();
    let hh = h_elem(alpha, &r2)?;
    let tau = t.try_div(&FieldElem::from_int(3))?;
    let two = FieldElem::from_int(2);
    let (tau2, s2) = (&two * &tau, &two * s);
    let target = cm(alpha, s, t);
    let mut b = XiBuilder::new(target.clone());

    b.push(&xi(&hh, &translation_pair(alpha, s, &tau)?, 1));

    let a1 = hh.conj(&x(alpha, tau.clone()));
    let a2 = hh.conj(&x(alpha, s.clone()));
    let (e1, _) = h_conj(alpha, &r2, alpha, &tau)?;
    let (e2, _) = h_conj(alpha, &r2, alpha, s)?;
    let rho1 = e1.sym().left_quotient();
    let rho2 = e2.sym().left_quotient();
    let prefix = cm(alpha, s, &tau);
    let to1 = x(alpha, tau2.clone()).comm(&a2);
    b.rewrite(&prefix, &a1.comm(&a2), &target, &to1, &lift_left(&x(alpha, tau2.clone()), &rho1, &a2))?;
    let to2 = cm(alpha, &tau2, &s2);
    b.rewrite(&prefix, &to1, &target, &to2, &lift_right(&x(alpha, tau2.clone()), &x(alpha, s2.clone()), &rho2))?;

    // rest = C(s,τ)·C(2s,2τ)⁻¹·C(s,t) = C(s,t)⁻¹·Z₃Z₂⁻¹Z₁·C(s,t)
    let z1 = bilin_left(alpha, s, s, &tau2)?;
    let z2 = bilin_right(alpha, s, &tau2, &tau2)?;
    let z3 = bilin_right(alpha, s, t, &tau)?;
    let fin = z3.mul(&z2.inv()).mul(&z1).conj(&target.inv());
    b.push(&fin);
    b.finish()
}

/// r³_α(s,t)·r³_α(−s,t)⁻¹, five commutators.
pub fn r3_pair_cert(alpha: Root, s: &FieldElem, t: &FieldElem, a: &FieldElem) -> Result<CommutatorProduct> {
    let w = w_elem(alpha, s)?;
    let wm = w_elem(alpha, &s.neg())?;
    let target = RelatorInstance::r3(alpha, s.clone(), t.clone())
        .expand()?
        .mul(&RelatorInstance::r3(alpha, s.neg(), t.clone()).expand()?.inv());
    let c = wm.mul(&w.inv());
    let c_blocks = vec![WBlock::new(alpha, s.neg(), false), WBlock::new(alpha, s.clone(), true)];
    let ci_blocks = lemmas::blocks_inverse(&c_blocks);
    let xt = x(alpha, t.clone());
    let seg1 = xt.comm(&c);
    let seg2 = wm.comm(&w.inv());
    let mut b = XiBuilder::new(target);

    // [W(−s), W⁻¹] = [W⁻¹ρ, W⁻¹] with ρ = W·W(−s)
    let g = w.inv();
    let rho = w_inverse(alpha, s)?.witness;
    b.rewrite(&w.mul(&seg1), &seg2, &g, &Word::empty(), &lift_left(&g, &rho, &g))?;

    // x(t) = Kσ with K = [h, x(t')]
    let hh = h_elem(alpha, a)?;
    let e = eq1(alpha, a, t)?;
    let k = e.lhs.clone();
    let sigma = e.left_quotient();
    let kc = k.comm(&c);
    b.rewrite(&w, &seg1, &g, &kc, &lift_left(&k, &sigma, &c))?;

    // [K, c] → [K, hch⁻¹]
    let hc = hh.conj(&c);
    let tau_w = central_comm(&Congruence::refl(c.inv()), &ci_blocks, &hh)?;
    let kh = k.comm(&hc);
    b.rewrite(&w, &kc, &g, &kh, &lift_right(&k, &c, &tau_w).inv())?;

    // Hall–Witt with x = h, y = x(t'): [K, hch⁻¹] = K·[[y,h], hch⁻¹]⁻¹·K⁻¹
    let y = k_inner(alpha, a, t)?;
    let cref = Congruence::refl(c.clone());
    let w_hc = central_comm(&cref, &c_blocks, &hh)?.inv();
    let w_cy = central_comm(&cref, &c_blocks, &y)?;
    let hw = hall_witt_cert(&hh, &y, &c, &w_hc, &w_cy).inv().conj(&k);
    b.rewrite(&w, &kh, &g, &Word::empty(), &hw)?;
    b.finish()
}

fn k_inner(alpha: Root, a: &FieldElem, t: &FieldElem) -> Result<Word> {
    let d = &(a * a) - &FieldElem::one();
    Ok(x(alpha, t.try_div(&d)?))
}
