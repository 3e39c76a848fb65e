//! Certificate transformers: folding, lifting, composition and surface data.

use super::builder::{lift_left, lift_right};
use super::{
    check_abelianization, verify_commutator_product, verify_relator_product, CommutatorFactor, CommutatorProduct,
    Presentation, RelatorProduct,
};
use crate::error::{Error, Result};
use crate::words::Word;

/// Pairs each relator occurrence with a later opposite occurrence of the same relator:
/// f r f⁻¹ · x · g r⁻¹ g⁻¹ = f[r, f⁻¹xg]f⁻¹ · x.
pub fn fold_pairs(p: &RelatorProduct, require_balanced: bool) -> Result<CommutatorProduct> {
    check_abelianization(&p.target)?;
    if p.factors.len() % 2 == 1 {
        return Err(Error::OddFactorCount);
    }
    if require_balanced {
        let mut seen: Vec<(&super::Relator, i64)> = Vec::new();
        for f in &p.factors {
            match seen.iter_mut().find(|(r, _)| *r == &f.relator) {
                Some((_, n)) => *n += f.sign as i64,
                None => seen.push((&f.relator, f.sign as i64)),
            }
        }
        if let Some((r, n)) = seen.iter().find(|(_, n)| *n != 0) {
            return Err(Error::Unbalanced(format!("{} has signed count {}", r, n)));
        }
    }
    let mut pending = p.factors.clone();
    let mut out = Vec::new();
    while !pending.is_empty() {
        let first = pending.remove(0);
        let j = pending
            .iter()
            .position(|g| g.relator == first.relator && g.sign == -first.sign)
            .ok_or_else(|| Error::Unbalanced(format!("no partner for {}", first.relator)))?;
        let partner = pending.remove(j);
        let mut mid = Word::empty();
        for g in &pending[..j] {
            mid = mid.mul(&g.expand()?);
        }
        // f[ρ, y]f⁻¹ = [f y f⁻¹, f ρ f⁻¹]⁻¹ with y = f⁻¹·x·g
        let f = &first.conjugator;
        let y = f.inv().mul(&mid).mul(&partner.conjugator);
        let rho = RelatorProduct::single(first.relator.clone(), first.sign)?;
        out.push(CommutatorFactor::Commutator { f: f.conj(&y), witness: rho.conj(f), sign: -1 });
    }
    let c = CommutatorProduct::from_factors(out);
    if c.target != p.target {
        return Err(Error::Internal("fold_pairs changed the target".into()));
    }
    Ok(c)
}

fn require_ok(pres: &Presentation, p: &CommutatorProduct, what: &str) -> Result<()> {
    let v = verify_commutator_product(pres, p)?;
    if !v.ok {
        return Err(Error::VerificationFailed(format!("{}: residual {}", what, v.residual)));
    }
    Ok(())
}

fn require_rp(pres: &Presentation, p: &RelatorProduct, what: &str) -> Result<()> {
    let v = verify_relator_product(pres, p)?;
    if !v.ok {
        return Err(Error::VerificationFailed(format!("{}: residual {}", what, v.residual)));
    }
    Ok(())
}

/// From a certificate for [g,h] and witnesses r, s, a certificate for [g·r, h·s].
/// Each nontrivial witness costs one extra commutator.
pub fn lift_adjust(
    pres: &Presentation,
    p: &CommutatorProduct,
    g: &Word,
    h: &Word,
    r: &RelatorProduct,
    s: &RelatorProduct,
) -> Result<CommutatorProduct> {
    require_ok(pres, p, "input certificate")?;
    require_rp(pres, r, "left witness")?;
    require_rp(pres, s, "right witness")?;
    if p.target != g.comm(h) {
        return Err(Error::Invalid("certificate target is not [g, h]".into()));
    }
    let hs = h.mul(&s.target);
    let mut out = CommutatorProduct::empty();
    if !r.target.is_empty() {
        out = out.mul(&lift_left(g, r, &hs));
    }
    if !s.target.is_empty() {
        out = out.mul(&lift_right(g, h, s));
    }
    Ok(out.mul(p))
}

/// [g₁, h₁h₂] = [g₁,h₁]·h₁[g₁,h₂]h₁⁻¹ with [g₁,h₂] recovered from [g₂,h₂] via g₂ = g₁δ.
pub fn compose_products(
    pres: &Presentation,
    p1: &CommutatorProduct,
    (g1, h1): (&Word, &Word),
    p2: &CommutatorProduct,
    (g2, h2): (&Word, &Word),
    diff: &RelatorProduct,
) -> Result<CommutatorProduct> {
    require_ok(pres, p1, "first certificate")?;
    require_ok(pres, p2, "second certificate")?;
    require_rp(pres, diff, "lift difference")?;
    if p1.target != g1.comm(h1) || p2.target != g2.comm(h2) {
        return Err(Error::Invalid("certificate targets do not match the given lifts".into()));
    }
    if diff.target != g1.inv().mul(g2) {
        return Err(Error::MissingCertificate("witness for the g-lift difference".into()));
    }
    let mut second = p2.clone();
    if !diff.target.is_empty() && !h2.is_empty() {
        second = lift_left(g1, diff, h2).inv().mul(&second);
    }
    Ok(p1.mul(&second.conj(h1)))
}

/// Pairs (a_i, b_i) with ∏[a_i, b_i] = ε; b_i ∈ R is witnessed for i ≥ 2.
#[derive(Clone, Debug)]
pub struct SurfaceDatum {
    pub genus: usize,
    pub pairs: Vec<(Word, Word)>,
    pub witnesses: Vec<RelatorProduct>,
}

impl SurfaceDatum {
    pub fn check(&self, pres: &Presentation) -> Result<bool> {
        let mut acc = Word::empty();
        for (a, b) in &self.pairs {
            acc = acc.mul(&a.comm(b));
        }
        if !acc.is_empty() || self.pairs.len() != self.genus || self.witnesses.len() + 1 != self.genus {
            return Ok(false);
        }
        for (w, (_, b)) in self.witnesses.iter().zip(self.pairs.iter().skip(1)) {
            if w.target != *b || !verify_relator_product(pres, w)?.ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn surface_datum(pres: &Presentation, p: &CommutatorProduct, g: &Word, h: &Word) -> Result<SurfaceDatum> {
    require_ok(pres, p, "certificate")?;
    if p.target != g.comm(h) {
        return Err(Error::Invalid("certificate target is not [g, h]".into()));
    }
    let mut pairs = vec![(g.clone(), h.clone())];
    let mut witnesses = Vec::new();
    for f in p.factors.iter().rev() {
        let CommutatorFactor::Commutator { f, witness, sign } = f else {
            return Err(Error::Invalid("imported blocks carry no explicit commutators".into()));
        };
        if *sign > 0 {
            // [f,r]⁻¹ = [f⁻¹, f r f⁻¹]
            pairs.push((f.inv(), f.conj(&witness.target)));
            witnesses.push(witness.conj(f));
        } else {
            pairs.push((f.clone(), witness.target.clone()));
            witnesses.push(witness.clone());
        }
    }
    let d = SurfaceDatum { genus: pairs.len(), pairs, witnesses };
    if !d.check(pres)? {
        return Err(Error::Internal("surface datum does not close up".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::torus_knot;

    #[test]
    fn torus_fold_and_surface() {
        let tk = torus_knot(2, 3).unwrap();
        let c = fold_pairs(&tk.relator_product, true).unwrap();
        assert_eq!(c.cost(), 1);
        assert!(verify_commutator_product(&tk.presentation, &c).unwrap().ok);
        let d = surface_datum(&tk.presentation, &c, &tk.m, &tk.l).unwrap();
        assert_eq!(d.genus, 2);
    }

    #[test]
    fn base_case_fold() {
        let tk = torus_knot(3, 5).unwrap();
        let rel = tk.relator_product.factors[0].relator.clone();
        let r = RelatorProduct::single(rel, 1).unwrap();
        let f = Word::named("a").mul(&Word::named("b"));
        let g = Word::named("b").pow(-2);
        let p = r.conj(&f).mul(&r.inv().conj(&g));
        let c = fold_pairs(&p, true).unwrap();
        assert_eq!(c.cost(), 1);
        assert!(verify_commutator_product(&tk.presentation, &c).unwrap().ok);
    }

    #[test]
    fn lift_adjust_costs() {
        let tk = torus_knot(2, 3).unwrap();
        let c = fold_pairs(&tk.relator_product, true).unwrap();
        let e = RelatorProduct::empty();
        let same = lift_adjust(&tk.presentation, &c, &tk.m, &tk.l, &e, &e).unwrap();
        assert_eq!(same.cost(), 1);
        let r = RelatorProduct::single(tk.relator_product.factors[0].relator.clone(), 1).unwrap();
        let out = lift_adjust(&tk.presentation, &c, &tk.m, &tk.l, &r, &e).unwrap();
        assert!(verify_commutator_product(&tk.presentation, &out).unwrap().ok);
        assert_eq!(out.target, tk.m.mul(&r.target).comm(&tk.l));
        let both = lift_adjust(&tk.presentation, &c, &tk.m, &tk.l, &r, &r).unwrap();
        assert_eq!(both.cost(), 3);
        assert!(verify_commutator_product(&tk.presentation, &both).unwrap().ok);
    }
}
