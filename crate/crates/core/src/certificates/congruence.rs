use super::RelatorProduct;
use crate::error::{Error, Result};
use crate::words::Word;

/// lhs ≡ rhs modulo R, witnessed by a relator product with target lhs·rhs⁻¹.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub lhs: Word,
    pub rhs: Word,
    pub witness: RelatorProduct,
}

impl Congruence {
    pub fn new(lhs: Word, rhs: Word, witness: RelatorProduct) -> Result<Self> {
        if witness.target != lhs.mul(&rhs.inv()) {
            return Err(Error::Internal(format!("congruence witness mismatch: {} vs {}", lhs, rhs)));
        }
        Ok(Congruence { lhs, rhs, witness })
    }

    pub fn refl(w: Word) -> Self {
        Congruence { lhs: w.clone(), rhs: w, witness: RelatorProduct::empty() }
    }

    /// r^sign ≡ ε
    pub fn from_relator(witness: RelatorProduct) -> Self {
        Congruence { lhs: witness.target.clone(), rhs: Word::empty(), witness }
    }

    pub fn cost(&self) -> usize {
        self.witness.cost()
    }

    pub fn sym(&self) -> Self {
        Congruence { lhs: self.rhs.clone(), rhs: self.lhs.clone(), witness: self.witness.inv() }
    }

    pub fn trans(&self, o: &Congruence) -> Result<Self> {
        if self.rhs != o.lhs {
            return Err(Error::Internal(format!("trans: {} is not {}", self.rhs, o.lhs)));
        }
        Ok(Congruence { lhs: self.lhs.clone(), rhs: o.rhs.clone(), witness: self.witness.mul(&o.witness) })
    }

    /// prefix·lhs·suffix ≡ prefix·rhs·suffix
    pub fn context(&self, prefix: &Word, suffix: &Word) -> Self {
        Congruence {
            lhs: prefix.mul(&self.lhs).mul(suffix),
            rhs: prefix.mul(&self.rhs).mul(suffix),
            witness: self.witness.conj(prefix),
        }
    }

    /// A·C ≡ B·D from A ≡ B and C ≡ D.
    pub fn mul(&self, o: &Congruence) -> Self {
        // AC(BD)⁻¹ = A·(CD⁻¹)·A⁻¹·(AB⁻¹)
        Congruence {
            lhs: self.lhs.mul(&o.lhs),
            rhs: self.rhs.mul(&o.rhs),
            witness: o.witness.conj(&self.lhs).mul(&self.witness),
        }
    }

    /// A⁻¹ ≡ B⁻¹
    pub fn inv(&self) -> Self {
        // A⁻¹B = A⁻¹(AB⁻¹)⁻¹A
        Congruence { lhs: self.lhs.inv(), rhs: self.rhs.inv(), witness: self.witness.inv().conj(&self.lhs.inv()) }
    }

    /// g·lhs·g⁻¹ ≡ g·rhs·g⁻¹
    pub fn conj_by(&self, g: &Word) -> Self {
        self.context(g, &g.inv())
    }

    /// A z A⁻¹ ≡ B z B⁻¹
    pub fn conj_equiv(&self, z: &Word) -> Self {
        self.mul(&Congruence::refl(z.clone())).mul(&self.inv())
    }

    /// Witness for lhs⁻¹·rhs ∈ R.
    pub fn left_quotient(&self) -> RelatorProduct {
        self.witness.inv().conj(&self.lhs.inv())
    }

    /// Replace the right side by a word that is freely equal to it.
    pub fn with_rhs(&self, rhs: Word) -> Result<Self> {
        if rhs != self.rhs {
            return Err(Error::Internal(format!("with_rhs: {} is not {}", rhs, self.rhs)));
        }
        Ok(self.clone())
    }
}
