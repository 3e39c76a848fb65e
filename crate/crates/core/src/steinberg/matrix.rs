use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::words::{Generator, Root, Word};
use std::fmt;

/// A 2×2 matrix of determinant one.
#[derive(Clone, PartialEq)]
pub struct SLMatrix {
    pub m: [[FieldElem; 2]; 2],
}

impl SLMatrix {
    pub fn identity() -> Self {
        Self::new(FieldElem::one(), FieldElem::zero(), FieldElem::zero(), FieldElem::one())
    }

    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        SLMatrix { m: [[a, b], [c, d]] }
    }

    pub fn elementary(alpha: Root, t: FieldElem) -> Self {
        match alpha {
            Root::Pos => Self::new(FieldElem::one(), t, FieldElem::zero(), FieldElem::one()),
            Root::Neg => Self::new(FieldElem::one(), FieldElem::zero(), t, FieldElem::one()),
        }
    }

    pub fn mul(&self, o: &SLMatrix) -> SLMatrix {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        SLMatrix { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    /// self · elementary(alpha, t) without the multiplications by 0 and 1.
    pub fn mul_elementary(&self, alpha: Root, t: &FieldElem) -> SLMatrix {
        let [[a, b], [c, d]] = &self.m;
        match alpha {
            Root::Pos => Self::new(a.clone(), &(a * t) + b, c.clone(), &(c * t) + d),
            Root::Neg => Self::new(a + &(b * t), b.clone(), c + &(d * t), d.clone()),
        }
    }

    pub fn inv(&self) -> SLMatrix {
        let [[a, b], [c, d]] = &self.m;
        Self::new(d.clone(), b.neg(), c.neg(), a.clone())
    }

    pub fn det(&self) -> FieldElem {
        let [[a, b], [c, d]] = &self.m;
        &(a * d) - &(b * c)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl fmt::Display for SLMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

impl fmt::Debug for SLMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The evaluation homomorphism π: F → SL₂(k).
pub fn pi_eval(w: &Word) -> Result<SLMatrix> {
    let mut acc = SLMatrix::identity();
    for l in w.letters() {
        match &l.gen {
            Generator::Stein { alpha, t } => {
                let t = if l.inv { t.neg() } else { t.clone() };
                acc = acc.mul_elementary(*alpha, &t);
            }
            Generator::Named(n) => return Err(Error::NamedGenerator(n.to_string())),
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;
    use crate::steinberg::{h_elem, psi_apply, w_elem};

    #[test]
    fn elementary_product_shortcut() {
        let c = FieldCtx::new(&["t", "u"]);
        let (t, u) = (c.var("t"), c.var("u"));
        let m = SLMatrix::new(u.clone(), &u + &t, FieldElem::from_int(3), &(&u * &t) + &FieldElem::one());
        for a in [Root::Pos, Root::Neg] {
            assert_eq!(m.mul_elementary(a, &t), m.mul(&SLMatrix::elementary(a, t.clone())));
        }
    }

    #[test]
    fn images_of_basic_elements() {
        let c = FieldCtx::new(&["t", "u"]);
        let (t, u) = (c.var("t"), c.var("u"));
        let x = pi_eval(&Word::x(Root::Pos, t.clone())).unwrap();
        assert_eq!(x, SLMatrix::new(FieldElem::one(), t.clone(), FieldElem::zero(), FieldElem::one()));
        let w = pi_eval(&w_elem(Root::Pos, &u).unwrap()).unwrap();
        assert_eq!(w, SLMatrix::new(FieldElem::zero(), u.clone(), u.inv().unwrap().neg(), FieldElem::zero()));
        let h = pi_eval(&h_elem(Root::Pos, &u).unwrap()).unwrap();
        assert_eq!(h, SLMatrix::new(u.clone(), FieldElem::zero(), FieldElem::zero(), u.inv().unwrap()));
        let p = pi_eval(&psi_apply(&Word::x(Root::Pos, t), &FieldElem::from_int(2)).unwrap()).unwrap();
        assert_eq!(p, x);
        assert!(pi_eval(&Word::named("a")).is_err());
    }
}
