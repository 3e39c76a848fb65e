//! Certificates for ψ(r) ∈ [F,R] and the transport of relator length to commutator length.

use super::builder::{hall_witt_cert, lift_left, lift_right, XiBuilder};
use super::lemmas::{self, central_comm, eq1, h_blocks, h_conj, psi_defect, WBlock};
use super::translations::{translation_cert, TranslationMode};
use super::{CommutatorProduct, Congruence, Relator, RelatorProduct};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::steinberg::{h_elem, psi_apply, w_elem, RelatorInstance, Schema};
use crate::words::{Generator, Letter, Root, Word};
use num_traits::ToPrimitive;

fn x(alpha: Root, t: FieldElem) -> Word {
    Word::x(alpha, t)
}

fn divisor(a: &FieldElem) -> Result<FieldElem> {
    let d = &(a * a) - &FieldElem::one();
    if d.is_zero() || a.is_zero() {
        return Err(Error::DegeneratePsi);
    }
    Ok(d)
}

/// ψ(r¹_α(s,t)): three lifts and one translation commutator.
pub fn psi_r1_cert(alpha: Root, s: &FieldElem, t: &FieldElem, a: &FieldElem, mode: TranslationMode) -> Result<CommutatorProduct> {
    let d = divisor(a)?;
    let (sp, tp) = (s.try_div(&d)?, t.try_div(&d)?);
    let h = h_elem(alpha, a)?;
    let target = psi_apply(&RelatorInstance::r1(alpha, s.clone(), t.clone()).expand()?, a)?;
    let mut b = XiBuilder::new(target);

    let k = x(alpha, sp.clone()).mul(&x(alpha, tp.clone()));
    let sigma = lemmas::add(alpha, &sp, &tp)?.left_quotient();
    let from = h.comm(&x(alpha, (s + t).try_div(&d)?));
    let suffix = h.comm(&x(alpha, sp.clone())).inv().mul(&h.comm(&x(alpha, tp.clone())).inv());
    b.rewrite(&Word::empty(), &from, &suffix, &h.comm(&k), &lift_right(&h, &k, &sigma))?;

    // rest = [[h,x(s')]x(s'), [h,x(t')]]
    let g1 = h.conj(&x(alpha, sp.clone()));
    let g2 = h.comm(&x(alpha, tp.clone()));
    debug_assert!(*b.rest() == g1.comm(&g2));
    let (e1, s2) = h_conj(alpha, a, alpha, &sp)?;
    let rho1 = e1.sym().left_quotient();
    let xs2 = x(alpha, s2.clone());
    let to = xs2.comm(&g2);
    b.rewrite(&Word::empty(), &g1.comm(&g2), &Word::empty(), &to, &lift_left(&xs2, &rho1, &g2))?;
    let e2 = eq1(alpha, a, t)?;
    let rho2 = e2.sym().left_quotient();
    let xt = x(alpha, t.clone());
    b.rewrite(&Word::empty(), &to, &Word::empty(), &xs2.comm(&xt), &lift_right(&xs2, &xt, &rho2))?;
    b.push(&translation_cert(alpha, &s2, t, mode)?);
    b.finish()
}

/// ψ(r²_α(u,t)): five commutators; needs a² − 1 to be a positive integer.
pub fn psi_r2_cert(alpha: Root, u: &FieldElem, t: &FieldElem, a: &FieldElem) -> Result<CommutatorProduct> {
    let d = divisor(a)?;
    let n = d
        .as_rational()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_integer().to_i64())
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Invalid("psi certificate for R2 needs a^2-1 to be a positive integer".into()))?;
    let wu = w_elem(alpha, u)?;
    let psi_w = psi_apply(&wu, a)?;
    let hp = h_elem(alpha, a)?;
    let hm = h_elem(-alpha, a)?;
    let tp = t.try_div(&d)?;
    let u2 = u.pow(-2)?;
    let xx = x(-alpha, &u2 * &tp);
    let target = psi_apply(&RelatorInstance::r2(alpha, u.clone(), t.clone()).expand()?, a)?;
    let mut b = XiBuilder::new(target);

    let zp = psi_w.conj(&x(alpha, tp.clone()));
    let c = hm.inv().mul(&psi_w.conj(&hp));
    let tail = hm.comm(&zp).mul(&hm.comm(&xx));
    debug_assert!(*b.rest() == hm.conj(&c.comm(&zp)).mul(&tail));

    // Z' ≡ x_{−α}(−u⁻²t') ≡ K = [h₋, x_{−α}(−u⁻²t'/d)]
    let e_psi = psi_defect(&wu, a)?;
    let z_to_y = e_psi.conj_equiv(&x(alpha, tp.clone())).trans(&lemmas::weyl_same(alpha, u, &tp)?)?;
    let yval = (&u2 * &tp).neg();
    let k_eq = eq1(-alpha, a, &yval)?;
    let k = k_eq.lhs.clone();
    let rho = k_eq.trans(&z_to_y.sym())?.left_quotient();
    let ck = c.comm(&k);
    b.rewrite(&hm, &c.comm(&zp), &hm.inv().mul(&tail), &ck, &lift_right(&c, &k, &rho))?;

    // [c, K] = K·[[y,x], xc'x⁻¹]·K⁻¹ with x = h₋, y = Y, c' = x⁻¹cx
    let yy = x(-alpha, yval.try_div(&d)?);
    let hmb = lemmas::blocks_inverse(&h_blocks(-alpha, a));
    let mut cp_blocks = hmb.clone();
    cp_blocks.extend(hmb);
    cp_blocks.push(WBlock::new(alpha, u.clone(), false));
    cp_blocks.extend(h_blocks(alpha, a));
    cp_blocks.push(WBlock::new(alpha, u.clone(), true));
    cp_blocks.extend(h_blocks(-alpha, a));
    let cp_eq = Congruence::refl(hm.pow(-2))
        .mul(&e_psi)
        .mul(&Congruence::refl(hp.clone()))
        .mul(&e_psi.inv())
        .mul(&Congruence::refl(hm.clone()));
    let w_xc = central_comm(&cp_eq, &cp_blocks, &hm)?.inv();
    let w_cy = central_comm(&cp_eq, &cp_blocks, &yy)?;
    let hw = hall_witt_cert(&hm, &yy, &cp_eq.lhs, &w_xc, &w_cy).conj(&k);
    b.rewrite(&hm, &ck, &hm.inv().mul(&tail), &Word::empty(), &hw)?;

    // [h₋, Z'][h₋, X] with Z' ≡ X⁻¹
    let xinv = xx.inv();
    let zx = lemmas::inv_letter(-alpha, &(&u2 * &tp))?.trans(&z_to_y.sym())?;
    let rho2 = zx.left_quotient();
    let to = hm.comm(&xinv);
    b.rewrite(&Word::empty(), &hm.comm(&zp), &hm.comm(&xx), &to, &lift_right(&hm, &xinv, &rho2))?;

    // [h₋,X⁻¹][h₋,X] = [X⁻¹, [h₋,X]⁻¹] and [h₋,X] ≡ Xⁿ
    let (e_h, s_h) = h_conj(-alpha, a, -alpha, &(&u2 * &tp))?;
    let xn = xx.pow(n);
    let hx = e_h
        .mul(&lemmas::inv_letter(-alpha, &(&u2 * &tp))?)
        .trans(&lemmas::add(-alpha, &s_h, &(&u2 * &tp).neg())?)?;
    let coll = lemmas::collect(&xn)?;
    let hx = hx.trans(&Congruence::new(hx.rhs.clone(), coll.rhs.clone(), RelatorProduct::empty())?)?.trans(&coll.sym())?;
    let hxi = hx.inv();
    let rho3 = hxi.sym().left_quotient();
    let from = xinv.comm(&hm.comm(&xx).inv());
    debug_assert!(from == *b.rest());
    b.rewrite(&Word::empty(), &from, &Word::empty(), &Word::empty(), &lift_right(&xinv, &xn.inv(), &rho3))?;
    b.finish()
}

/// Scripted ψ-certificates and generator defects for the instances a relator product uses.
#[derive(Clone, Debug, Default)]
pub struct PsiCerts {
    pub relators: Vec<(RelatorInstance, CommutatorProduct)>,
    pub defects: Vec<(Generator, RelatorProduct)>,
}

impl PsiCerts {
    pub fn relator(&self, r: &RelatorInstance) -> Result<&CommutatorProduct> {
        self.relators
            .iter()
            .find(|(i, _)| i == r)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::MissingCertificate(format!("psi certificate for {}", r)))
    }

    pub fn defect(&self, g: &Generator) -> Result<&RelatorProduct> {
        self.defects
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::MissingCertificate(format!("defect certificate for {}", g)))
    }

    /// Builds certificates for every R1/R2 instance and every generator that occurs.
    pub fn scripted(x_ls: &RelatorProduct, x_cl: &[(Word, Word)], a: &FieldElem, mode: TranslationMode) -> Result<Self> {
        let mut out = PsiCerts::default();
        let mut words: Vec<&Word> = Vec::new();
        for f in &x_ls.factors {
            let Relator::Stein(r) = &f.relator else {
                return Err(Error::Invalid("psi acts on Steinberg words only".into()));
            };
            if out.relators.iter().any(|(i, _)| i == r) {
                continue;
            }
            let [p, q] = &r.params;
            let c = match r.schema {
                Schema::R1 => psi_r1_cert(r.alpha, p, q, a, mode)?,
                Schema::R2 => psi_r2_cert(r.alpha, p, q, a)?,
                _ => continue,
            };
            out.relators.push((r.clone(), c));
        }
        for (f, g) in x_cl {
            words.push(f);
            words.push(g);
        }
        for w in words {
            for l in w.letters() {
                if out.defects.iter().any(|(g, _)| *g == l.gen) {
                    continue;
                }
                let gw = Word::gen(l.gen.clone());
                out.defects.push((l.gen.clone(), psi_defect(&gw, a)?.sym().left_quotient()));
            }
        }
        Ok(out)
    }
}

/// Witness for w⁻¹ψ(w) from per-generator defects.
fn word_defect(w: &Word, certs: &PsiCerts) -> Result<RelatorProduct> {
    let mut acc = RelatorProduct::empty();
    for l in w.letters() {
        let lw = Word::from_letters([Letter { gen: l.gen.clone(), inv: false }]);
        let d = certs.defect(&l.gen)?;
        let dl = if l.inv { d.inv().conj(&lw) } else { d.clone() };
        // ρ(ab) = b⁻¹ρ(a)b·ρ(b)
        let lw_signed = if l.inv { lw.inv() } else { lw };
        acc = acc.conj(&lw_signed.inv()).mul(&dl);
    }
    Ok(acc)
}

/// Turns l_S data and a commutator expression of x into a certificate for x ∈ [F,R].
pub fn psi_transport(x_ls: &RelatorProduct, x_cl: &[(Word, Word)], certs: &PsiCerts, a: &FieldElem) -> Result<CommutatorProduct> {
    let x_target = &x_ls.target;
    if x_ls.evaluate()? != *x_target {
        return Err(Error::VerificationFailed("relator product does not reduce to its target".into()));
    }
    let mut prod = Word::empty();
    for (f, g) in x_cl {
        prod = prod.mul(&f.comm(g));
    }
    if prod != *x_target {
        return Err(Error::VerificationFailed("commutator expression does not reduce to the target".into()));
    }
    if x_target.is_empty() && x_ls.factors.is_empty() && x_cl.is_empty() {
        return Ok(CommutatorProduct::empty());
    }

    // ψ(x) as a product of conjugated ψ-relator certificates
    let mut cpsi = CommutatorProduct::empty();
    for f in &x_ls.factors {
        let Relator::Stein(r) = &f.relator else {
            return Err(Error::Invalid("psi acts on Steinberg words only".into()));
        };
        let c = certs.relator(r)?;
        let c = if f.sign < 0 { c.inv() } else { c.clone() };
        cpsi = cpsi.mul(&c.conj(&psi_apply(&f.conjugator, a)?));
    }

    // ψ(x)·x⁻¹ through lifts of each commutator
    let mut xi_all = CommutatorProduct::empty();
    let mut p = Word::empty();
    for (f, g) in x_cl {
        let rf = word_defect(f, certs)?;
        let rg = word_defect(g, certs)?;
        let pg = g.mul(&rg.target);
        let mut dcert = CommutatorProduct::empty();
        if !rf.target.is_empty() && !pg.is_empty() {
            dcert = dcert.mul(&lift_left(f, &rf, &pg));
        }
        if !rg.target.is_empty() && !f.is_empty() {
            dcert = dcert.mul(&lift_right(f, g, &rg));
        }
        xi_all = xi_all.mul(&dcert.conj(&p));
        p = p.mul(&f.comm(g));
    }
    let out = xi_all.inv().mul(&cpsi);
    if out.target != *x_target {
        return Err(Error::Internal("psi transport target mismatch".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{verify_commutator_product, Presentation};
    use crate::exactfield::FieldCtx;

    fn two() -> FieldElem {
        FieldElem::from_int(2)
    }

    #[test]
    fn psi_r1_costs() {
        let ctx = FieldCtx::new(&["s", "t"]);
        let (s, t) = (ctx.var("s"), ctx.var("t"));
        for al in [Root::Pos, Root::Neg] {
            let c = psi_r1_cert(al, &s, &t, &two(), TranslationMode::Axiom).unwrap();
            let v = verify_commutator_product(&Presentation::Steinberg, &c).unwrap();
            assert!(v.ok, "{:?}", v.failure);
            assert_eq!(v.cost, 5);
            let c = psi_r1_cert(al, &s, &t, &two(), TranslationMode::Constructive).unwrap();
            let v = verify_commutator_product(&Presentation::Steinberg, &c).unwrap();
            assert!(v.ok && v.cost == 12 && v.imported_cost == 0);
        }
    }

    #[test]
    fn psi_r2_cost_five() {
        let ctx = FieldCtx::new(&["u", "t"]);
        let (u, t) = (ctx.var("u"), ctx.var("t"));
        for al in [Root::Pos, Root::Neg] {
            let c = psi_r2_cert(al, &u, &t, &two()).unwrap();
            let v = verify_commutator_product(&Presentation::Steinberg, &c).unwrap();
            assert!(v.ok, "{:?}", v.failure);
            assert_eq!(v.cost, 5);
        }
    }

    #[test]
    fn transport_of_a_translation_commutator() {
        let ctx = FieldCtx::new(&["s", "t"]);
        let (s, t) = (ctx.var("s"), ctx.var("t"));
        let ls = crate::certificates::translation_pair(Root::Pos, &s, &t).unwrap();
        let cl = vec![(Word::x(Root::Pos, s.clone()), Word::x(Root::Pos, t.clone()))];
        let certs = PsiCerts::scripted(&ls, &cl, &two(), TranslationMode::Axiom).unwrap();
        let c = psi_transport(&ls, &cl, &certs, &two()).unwrap();
        let v = verify_commutator_product(&Presentation::Steinberg, &c).unwrap();
        assert!(v.ok, "{:?}", v.failure);
        assert!(v.cost <= 5 * 2 + 2 * 1, "cost {}", v.cost);
    }

    #[test]
    fn transport_of_identity_is_empty() {
        let c = psi_transport(&RelatorProduct::empty(), &[], &PsiCerts::default(), &two()).unwrap();
        assert!(c.factors.is_empty());
    }
}
