//! The Steinberg presentation St₂(k) = F/R.

mod check;
mod ghys;
mod matrix;
pub mod sample;

pub use check::{prop53_suite, relator_soundness, CandidateMatch, Prop53Outcome, SoundnessOutcome};
pub use ghys::{ghys_words, r1_block, r2_block, verify_ghys, GhysReport, GhysWords};
pub use matrix::{pi_eval, SLMatrix};

use crate::error::{Error, Result};
use crate::exactfield::{fe_eq, FieldElem};
use crate::words::{Generator, Root, Word};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    R1,
    R2,
    R3,
    R4,
}

impl Schema {
    pub fn name(self) -> &'static str {
        match self {
            Schema::R1 => "R1",
            Schema::R2 => "R2",
            Schema::R3 => "R3",
            Schema::R4 => "R4",
        }
    }

    pub fn parse(s: &str) -> Option<Schema> {
        match s {
            "R1" => Some(Schema::R1),
            "R2" => Some(Schema::R2),
            "R3" => Some(Schema::R3),
            "R4" => Some(Schema::R4),
            _ => None,
        }
    }

    /// Whether the schema belongs to the defining set {R1, R2}.
    pub fn is_primitive(self) -> bool {
        matches!(self, Schema::R1 | Schema::R2)
    }
}

#[derive(Clone, Debug)]
pub struct RelatorInstance {
    pub schema: Schema,
    pub alpha: Root,
    pub params: [FieldElem; 2],
}

impl PartialEq for RelatorInstance {
    fn eq(&self, o: &Self) -> bool {
        self.schema == o.schema && self.alpha == o.alpha && fe_eq(&self.params[0], &o.params[0]) && fe_eq(&self.params[1], &o.params[1])
    }
}

impl fmt::Display for RelatorInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = if self.alpha == Root::Pos { "+1" } else { "-1" };
        write!(f, "{}({}; {}, {})", self.schema.name(), a, self.params[0], self.params[1])
    }
}

impl RelatorInstance {
    pub fn new(schema: Schema, alpha: Root, p: FieldElem, q: FieldElem) -> Self {
        RelatorInstance { schema, alpha, params: [p, q] }
    }

    /// r¹_α(s,t) = x_α(s+t)x_α(s)⁻¹x_α(t)⁻¹
    pub fn r1(alpha: Root, s: FieldElem, t: FieldElem) -> Self {
        Self::new(Schema::R1, alpha, s, t)
    }

    /// r²_α(u,t) = w_α(u)x_α(t)w_α(u)⁻¹x_{−α}(u⁻²t)
    pub fn r2(alpha: Root, u: FieldElem, t: FieldElem) -> Self {
        Self::new(Schema::R2, alpha, u, t)
    }

    /// r³_α(u,t) = w_α(u)x_α(t)w_α(−u)x_{−α}(u⁻²t)
    pub fn r3(alpha: Root, u: FieldElem, t: FieldElem) -> Self {
        Self::new(Schema::R3, alpha, u, t)
    }

    /// r⁴_α(u,v) = x_α(−uv)r¹_{−α}(u⁻¹,v⁻¹)x_α(−uv)⁻¹
    pub fn r4(alpha: Root, u: FieldElem, v: FieldElem) -> Self {
        Self::new(Schema::R4, alpha, u, v)
    }

    pub fn check_units(&self) -> Result<()> {
        let units: &[usize] = match self.schema {
            Schema::R1 => &[],
            Schema::R2 | Schema::R3 => &[0],
            Schema::R4 => &[0, 1],
        };
        if units.iter().any(|&i| self.params[i].is_zero()) {
            return Err(Error::ZeroUnit);
        }
        Ok(())
    }

    pub fn expand(&self) -> Result<Word> {
        expand_relator(self)
    }
}

fn x(alpha: Root, t: FieldElem) -> Word {
    Word::x(alpha, t)
}

pub fn expand_relator(r: &RelatorInstance) -> Result<Word> {
    r.check_units()?;
    let a = r.alpha;
    let [p, q] = &r.params;
    Ok(match r.schema {
        Schema::R1 => x(a, p + q).mul(&x(a, p.clone()).inv()).mul(&x(a, q.clone()).inv()),
        Schema::R2 => {
            let w = w_elem(a, p)?;
            w.mul(&x(a, q.clone())).mul(&w.inv()).mul(&x(-a, &p.pow(-2)? * q))
        }
        Schema::R3 => w_elem(a, p)?
            .mul(&x(a, q.clone()))
            .mul(&w_elem(a, &p.neg())?)
            .mul(&x(-a, &p.pow(-2)? * q)),
        Schema::R4 => {
            let c = x(a, (p * q).neg());
            c.conj(&expand_relator(&RelatorInstance::r1(-a, p.inv()?, q.inv()?))?)
        }
    })
}

/// w_α(u) = x_α(u)x_{−α}(−u⁻¹)x_α(u)
pub fn w_elem(alpha: Root, u: &FieldElem) -> Result<Word> {
    let ui = u.inv().map_err(|_| Error::ZeroUnit)?;
    Ok(x(alpha, u.clone()).mul(&x(-alpha, ui.neg())).mul(&x(alpha, u.clone())))
}

/// h_α(u) = w_α(u)w_α(1)⁻¹
pub fn h_elem(alpha: Root, u: &FieldElem) -> Result<Word> {
    Ok(w_elem(alpha, u)?.mul(&w_elem(alpha, &FieldElem::one())?.inv()))
}

/// η_α(u) = w_α(u)w_{−α}(1)
pub fn eta_elem(alpha: Root, u: &FieldElem) -> Result<Word> {
    Ok(w_elem(alpha, u)?.mul(&w_elem(-alpha, &FieldElem::one())?))
}

/// c(u,v) = h_α(uv)h_α(u)⁻¹h_α(v)⁻¹
pub fn c_elem(alpha: Root, u: &FieldElem, v: &FieldElem) -> Result<Word> {
    Ok(h_elem(alpha, &(u * v))?.mul(&h_elem(alpha, u)?.inv()).mul(&h_elem(alpha, v)?.inv()))
}

/// ψ(x_α(t)) = [h_α(a), x_α(t/(a²−1))]
pub fn psi_letter(alpha: Root, t: &FieldElem, a: &FieldElem) -> Result<Word> {
    let d = &(a * a) - &FieldElem::one();
    if d.is_zero() || a.is_zero() {
        return Err(Error::DegeneratePsi);
    }
    Ok(h_elem(alpha, a)?.comm(&x(alpha, t.try_div(&d)?)))
}

pub fn psi_apply(w: &Word, a: &FieldElem) -> Result<Word> {
    let d = &(a * a) - &FieldElem::one();
    if d.is_zero() || a.is_zero() {
        return Err(Error::DegeneratePsi);
    }
    w.map(&mut |g: &Generator| match g {
        Generator::Stein { alpha, t } => psi_letter(*alpha, t, a),
        Generator::Named(n) => Err(Error::UnmappedGenerator(n.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;

    fn ctx() -> FieldCtx {
        FieldCtx::new(&["s", "t", "u"])
    }

    #[test]
    fn relator_lengths() {
        let c = ctx();
        let (s, t, u) = (c.var("s"), c.var("t"), c.var("u"));
        let r1 = expand_relator(&RelatorInstance::r1(Root::Pos, s.clone(), t.clone())).unwrap();
        assert_eq!(r1.len(), 3);
        let r1z = expand_relator(&RelatorInstance::r1(Root::Pos, s, FieldElem::zero())).unwrap();
        assert_eq!(r1z, Word::x(Root::Pos, FieldElem::zero()).inv());
        let r3 = expand_relator(&RelatorInstance::r3(Root::Pos, u.clone(), t)).unwrap();
        assert_eq!(r3.len(), 8);
        assert!(expand_relator(&RelatorInstance::r2(Root::Pos, FieldElem::zero(), u)).is_err());
    }

    #[test]
    fn derived_elements() {
        let c = ctx();
        let u = c.var("u");
        assert_eq!(w_elem(Root::Pos, &u).unwrap().to_string(), "x(+1,u)*x(-1,-1/u)*x(+1,u)");
        assert!(h_elem(Root::Pos, &FieldElem::one()).unwrap().is_empty());
        assert_eq!(eta_elem(Root::Pos, &u).unwrap().len(), 6);
    }

    #[test]
    fn psi_of_a_letter() {
        let c = ctx();
        let t = c.var("t");
        let a = FieldElem::from_int(2);
        let img = psi_apply(&Word::x(Root::Pos, t.clone()), &a).unwrap();
        let expect = h_elem(Root::Pos, &a).unwrap().comm(&Word::x(Root::Pos, c.parse("t/3").unwrap()));
        assert_eq!(img, expect);
        assert!(psi_apply(&Word::empty(), &a).unwrap().is_empty());
        assert!(psi_apply(&img, &FieldElem::from_int(-1)).is_err());
    }
}
