//! Single-point corruptions of certificates, for soundness testing.

use super::{CommutatorFactor, CommutatorProduct, Presentation, Relator, RelatorProduct};
use crate::exactfield::FieldElem;
use crate::steinberg::{RelatorInstance, Schema};
use crate::words::{Root, Word};
use rand::Rng;

/// Letters that are legal in the presentation's alphabet.
pub fn alphabet(pres: &Presentation) -> Vec<Word> {
    match pres {
        Presentation::Finite { generators, .. } => generators.iter().map(|g| Word::named(g)).collect(),
        Presentation::Steinberg => vec![Word::x(Root::Pos, FieldElem::one()), Word::x(Root::Neg, FieldElem::one())],
    }
}

fn pick<'a, R: Rng>(rng: &mut R, letters: &'a [Word]) -> &'a Word {
    &letters[rng.gen_range(0..letters.len())]
}

fn shift_param(r: &RelatorInstance) -> RelatorInstance {
    let q = &r.params[1];
    let q2 = if r.schema == Schema::R4 { q + q } else { q + &FieldElem::one() };
    RelatorInstance::new(r.schema, r.alpha, r.params[0].clone(), q2)
}

/// One change to one factor or to the target. None if the product has nothing to mutate.
pub fn mutate_relator_product<R: Rng>(p: &RelatorProduct, letters: &[Word], rng: &mut R) -> Option<(RelatorProduct, String)> {
    let mut out = p.clone();
    let n = p.factors.len();
    let kind = if n == 0 { 3 } else { rng.gen_range(0..5) };
    let i = if n == 0 { 0 } else { rng.gen_range(0..n) };
    let what = match kind {
        0 => {
            out.factors[i].sign = -out.factors[i].sign;
            format!("flip sign of factor {}", i)
        }
        1 => match &p.factors[i].relator {
            Relator::Stein(r) => {
                out.factors[i].relator = Relator::Stein(shift_param(r));
                format!("shift parameter of factor {}", i)
            }
            Relator::Named { .. } => {
                out.factors.remove(i);
                format!("drop factor {}", i)
            }
        },
        2 => {
            let l = pick(rng, letters);
            out.factors[i].conjugator = out.factors[i].conjugator.mul(l);
            format!("extend conjugator of factor {} by {}", i, l)
        }
        3 => {
            let l = pick(rng, letters);
            out.target = out.target.mul(l);
            format!("extend target by {}", l)
        }
        _ => {
            out.factors.remove(i);
            format!("drop factor {}", i)
        }
    };
    Some((out, what))
}

pub fn mutate_commutator_product<R: Rng>(
    p: &CommutatorProduct,
    letters: &[Word],
    rng: &mut R,
) -> Option<(CommutatorProduct, String)> {
    let mut out = p.clone();
    let n = p.factors.len();
    let kind = if n == 0 { 3 } else { rng.gen_range(0..5) };
    let i = if n == 0 { 0 } else { rng.gen_range(0..n) };
    let what = match kind {
        0 => {
            match &mut out.factors[i] {
                CommutatorFactor::Commutator { sign, .. } => *sign = -*sign,
                CommutatorFactor::Imported { target, .. } => *target = target.inv(),
            }
            format!("invert factor {}", i)
        }
        1 => {
            let w = match &mut out.factors[i] {
                CommutatorFactor::Commutator { witness, .. } | CommutatorFactor::Imported { witness, .. } => witness,
            };
            if w.factors.is_empty() {
                return None;
            }
            let (m, d) = mutate_relator_product(w, letters, rng)?;
            *w = m;
            format!("witness of factor {}: {}", i, d)
        }
        2 => {
            let l = pick(rng, letters);
            match &mut out.factors[i] {
                CommutatorFactor::Commutator { f, .. } => *f = f.mul(l),
                CommutatorFactor::Imported { target, .. } => *target = target.mul(l),
            }
            format!("extend factor {} by {}", i, l)
        }
        3 => {
            let l = pick(rng, letters);
            out.target = out.target.mul(l);
            format!("extend target by {}", l)
        }
        _ => {
            out.factors.remove(i);
            format!("drop factor {}", i)
        }
    };
    Some((out, what))
}
