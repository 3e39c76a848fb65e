use super::{fold_pairs, CommutatorProduct, Presentation, Relator, RelatorProduct};
use crate::error::{Error, Result};
use crate::words::Word;

/// Torus knot group ⟨a, b | a^p = b^q⟩ with meridian/longitude lifts and certificates for [m, l].
#[derive(Clone, Debug)]
pub struct TorusKnot {
    pub p: i64,
    pub q: i64,
    pub u: i64,
    pub v: i64,
    pub presentation: Presentation,
    pub m: Word,
    pub l: Word,
    pub relator_product: RelatorProduct,
    pub commutator: CommutatorProduct,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn torus_knot(p: i64, q: i64) -> Result<TorusKnot> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::Invalid(format!("({}, {}) is not a coprime pair of integers ≥ 2", p, q)));
    }
    // qu + pv = 1 with 0 ≤ u < p
    let u = (0..p).find(|u| (q * u - 1).rem_euclid(p) == 0).expect("q is invertible mod p");
    let v = (1 - q * u) / p;
    let (a, b) = (Word::named("a"), Word::named("b"));
    let r = a.pow(p).mul(&b.pow(-q));
    let presentation = Presentation::Finite {
        name: format!("torus({},{})", p, q),
        generators: vec!["a".into(), "b".into()],
        relators: vec![("r".into(), r.clone())],
    };
    let rel = RelatorProduct::single(Relator::Named { name: "r".into(), word: r }, 1)?;
    let m = a.pow(u).mul(&b.pow(v));
    let l = a.pow(p);
    // [m,l] = a^u b^v r b^{−v} r⁻¹ a^{−u}
    let relator_product = rel.conj(&m).mul(&rel.inv().conj(&a.pow(u)));
    if relator_product.target != m.comm(&l) {
        return Err(Error::Internal("torus knot relator product".into()));
    }
    let commutator = fold_pairs(&relator_product, true)?;
    Ok(TorusKnot { p, q, u, v, presentation, m, l, relator_product, commutator })
}
