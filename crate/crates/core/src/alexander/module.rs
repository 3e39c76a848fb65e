use super::laurent::{lp_gcd_ext, LaurentPoly};
use super::matrix::{rational_rank, LaurentMat};
use super::snf::{smith_normal_form, SNFResult};
use crate::error::{Error, Result};
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// Λ^generators / (column span of relations).
#[derive(Clone, Debug, Serialize)]
pub struct ModulePresentation {
    pub generators: Vec<String>,
    pub relations: LaurentMat,
}

impl ModulePresentation {
    pub fn new(generators: Vec<String>, relations: LaurentMat) -> Result<Self> {
        if relations.rows != generators.len() {
            return Err(Error::Dimension(format!(
                "{} generators but relation vectors of length {}",
                generators.len(),
                relations.rows
            )));
        }
        Ok(ModulePresentation { generators, relations })
    }

    /// Generators g1..gn.
    pub fn with_default_names(relations: LaurentMat) -> Self {
        let generators = (1..=relations.rows).map(|i| format!("g{}", i)).collect();
        ModulePresentation { generators, relations }
    }

    /// Λ^n, no relations.
    pub fn free(n: usize) -> Self {
        Self::with_default_names(LaurentMat::zeros(n, 0))
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn check_vec(&self, v: &[LaurentPoly]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!("vector of length {} in a module on {} generators", v.len(), self.rank())));
        }
        Ok(())
    }
}

/// Λ^free_rank ⊕ ⊕ Λ/(d_i) over the non-unit invariant factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CokernelInvariants {
    pub free_rank: usize,
    pub torsion: Vec<LaurentPoly>,
}

impl CokernelInvariants {
    pub fn min_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

pub fn cokernel(pres: &ModulePresentation) -> Result<(CokernelInvariants, SNFResult)> {
    let s = smith_normal_form(&pres.relations)?;
    let torsion = s.invariant_factors.iter().filter(|d| !d.is_unit()).cloned().collect();
    Ok((CokernelInvariants { free_rank: pres.rank() - s.rank(), torsion }, s))
}

/// dim over ℚ of M ⊗ Λ/(t − c), from the invariant factors and cross-checked
/// against the rank of the evaluated matrix.
pub fn dim_at(pres: &ModulePresentation, c: &BigRational) -> Result<usize> {
    if c.is_zero() {
        return Err(Error::Invalid("t = 0 is not a point of Spec Λ".into()));
    }
    let (inv, _) = cokernel(pres)?;
    let mut dim = inv.free_rank;
    for d in &inv.torsion {
        if d.eval(c)?.is_zero() {
            dim += 1;
        }
    }
    let direct = pres.rank() - rational_rank(&pres.relations.eval(c)?);
    if direct != dim {
        return Err(Error::Internal(format!("dimension at t = {}: {} from SNF, {} directly", c, dim, direct)));
    }
    Ok(dim)
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipWitness {
    /// target = scale·x + relations·y
    pub x: Vec<LaurentPoly>,
    pub y: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<MembershipWitness>,
}

/// Is `target` in scale·M? Solved through the SNF of [scale·I | relations].
pub fn submodule_membership(target: &[LaurentPoly], pres: &ModulePresentation, scale: &LaurentPoly) -> Result<Membership> {
    pres.check_vec(target)?;
    let m = pres.rank();
    // plain multiples of the scale need no relations
    if !scale.is_zero() {
        if let Some(x) = target.iter().map(|t| t.exact_div(scale)).collect::<Option<Vec<_>>>() {
            let y = vec![LaurentPoly::zero(); pres.relations.cols];
            return Ok(Membership { member: true, witness: Some(MembershipWitness { x, y }) });
        }
    }
    let aug = LaurentMat::identity(m).scale(scale).hcat(&pres.relations)?;
    let s = smith_normal_form(&aug)?;
    let b = s.u.apply(target)?;
    let mut w = vec![LaurentPoly::zero(); aug.cols];
    for (i, bi) in b.iter().enumerate() {
        if i < s.rank() {
            match bi.exact_div(&s.invariant_factors[i]) {
                Some(q) => w[i] = q,
                None => return Ok(Membership { member: false, witness: None }),
            }
        } else if !bi.is_zero() {
            return Ok(Membership { member: false, witness: None });
        }
    }
    let z = s.v.apply(&w)?;
    let witness = MembershipWitness { x: z[..m].to_vec(), y: z[m..].to_vec() };
    if !check_membership(target, pres, scale, &witness)? {
        return Err(Error::Internal("membership witness does not reproduce the target".into()));
    }
    Ok(Membership { member: true, witness: Some(witness) })
}

pub fn check_membership(
    target: &[LaurentPoly],
    pres: &ModulePresentation,
    scale: &LaurentPoly,
    w: &MembershipWitness,
) -> Result<bool> {
    pres.check_vec(&w.x)?;
    if w.y.len() != pres.relations.cols {
        return Err(Error::Dimension("relation coefficient vector".into()));
    }
    let ry = pres.relations.apply(&w.y)?;
    Ok(w.x.iter().zip(&ry).zip(target).all(|((x, r), t)| &(scale * x) + r == *t))
}

#[derive(Clone, Debug, Serialize)]
pub struct Boundary {
    pub m: Vec<LaurentPoly>,
    pub l: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OcmtReport {
    pub u: String,
    pub scale: LaurentPoly,
    pub m: Membership,
    pub l: Membership,
    /// Both boundary classes lie in (t − u)·M.
    pub boundary_divisible: bool,
    pub invariants: CokernelInvariants,
    pub min_generators: usize,
    pub cyclic: bool,
    pub dim_at_u: usize,
    pub dim_at_u_inv: usize,
}

pub fn ocmt_check(pres: &ModulePresentation, boundary: &Boundary, u: &BigRational) -> Result<OcmtReport> {
    if u.is_zero() {
        return Err(Error::Invalid("u must be nonzero".into()));
    }
    let scale = LaurentPoly::t_minus(u);
    let m = submodule_membership(&boundary.m, pres, &scale)?;
    let l = submodule_membership(&boundary.l, pres, &scale)?;
    let (invariants, _) = cokernel(pres)?;
    let min_generators = invariants.min_generators();
    Ok(OcmtReport {
        u: u.to_string(),
        boundary_divisible: m.member && l.member,
        scale,
        m,
        l,
        cyclic: min_generators <= 1,
        min_generators,
        invariants,
        dim_at_u: dim_at(pres, u)?,
        dim_at_u_inv: dim_at(pres, &u.recip())?,
    })
}

/// gcd of the maximal minors of the relation matrix, canonical; zero when there are
/// fewer relations than generators.
pub fn alexander_polynomial(pres: &ModulePresentation) -> Result<LaurentPoly> {
    let (m, n) = (pres.rank(), pres.relations.cols);
    if n < m {
        return Ok(LaurentPoly::zero());
    }
    let mut g = LaurentPoly::zero();
    for cols in (0..n).combinations(m) {
        let d = pres.relations.select_cols(&cols).det()?;
        if !d.is_zero() {
            g = lp_gcd_ext(&g, &d)?.g;
        }
    }
    Ok(g.canonical())
}

#[derive(Clone, Debug, Serialize)]
pub struct Genus2Obstruction {
    pub cyclic: bool,
    pub min_generators: usize,
}

/// A cyclic module refutes the overcommuting property in Heegaard genus 2.
pub fn genus2_obstruction(pres: &ModulePresentation) -> Result<Genus2Obstruction> {
    let (inv, _) = cokernel(pres)?;
    let k = inv.min_generators();
    Ok(Genus2Obstruction { cyclic: k <= 1, min_generators: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::laurent::parse_laurent;
    use crate::alexander::matrix::parse_matrix;

    fn lp(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn stevedore() -> (ModulePresentation, Boundary) {
        let pres = ModulePresentation::new(
            vec!["m_L".into(), "m_K".into()],
            parse_matrix("2*t-5+2*t^-1\nt^-1-2").unwrap(),
        )
        .unwrap();
        (pres, Boundary { m: vec![lp("0"), lp("1")], l: vec![lp("t-2"), lp("0")] })
    }

    #[test]
    fn stevedore_module() {
        let (pres, b) = stevedore();
        let r = ocmt_check(&pres, &b, &q(2, 1)).unwrap();
        assert!(r.m.member && r.l.member && r.boundary_divisible);
        assert!(!r.cyclic);
        assert_eq!((r.dim_at_u, r.dim_at_u_inv), (1, 2));
        assert_eq!(r.invariants, CokernelInvariants { free_rank: 1, torsion: vec![lp("t-1/2")] });
        let w = r.l.witness.unwrap();
        assert_eq!(w.x, vec![lp("1"), lp("0")]);
        assert!(w.y.iter().all(|y| y.is_zero()));
        let no = submodule_membership(&b.m, &pres, &lp("2*t-1")).unwrap();
        assert!(!no.member && no.witness.is_none());
        let r3 = ocmt_check(&pres, &b, &q(3, 1)).unwrap();
        assert!(!r3.m.member && !r3.boundary_divisible);
    }

    #[test]
    fn small_modules() {
        let triv = ModulePresentation::with_default_names(LaurentMat::identity(1));
        let b = Boundary { m: vec![lp("0")], l: vec![lp("0")] };
        let r = ocmt_check(&triv, &b, &q(2, 1)).unwrap();
        assert!(r.boundary_divisible && r.cyclic);
        // Λ/(t−2) modulo t − 2 is still ℚ, so its generator is not divisible
        let cyc = ModulePresentation::with_default_names(LaurentMat::column(&[lp("t-2")]));
        assert!(!submodule_membership(&[lp("1")], &cyc, &lp("t-2")).unwrap().member);
        assert!(submodule_membership(&[lp("1")], &cyc, &lp("t-3")).unwrap().member);
        assert!(genus2_obstruction(&ModulePresentation::free(1)).unwrap().cyclic);
        assert!(!genus2_obstruction(&ModulePresentation::free(2)).unwrap().cyclic);
        assert!(ocmt_check(&cyc, &b, &q(0, 1)).is_err());
    }

    #[test]
    fn alexander_examples() {
        let closed = ModulePresentation::with_default_names(LaurentMat::column(&[lp("2*t-5+2*t^-1")]));
        let d = alexander_polynomial(&closed).unwrap();
        assert_eq!(d, lp("2*t^2-5*t+2").canonical());
        assert!(d.eval(&q(1, 2)).unwrap().is_zero());
        let full = ModulePresentation::with_default_names(parse_matrix("2*t-5+2*t^-1, t-2\nt^-1-2, 0").unwrap());
        assert_eq!(alexander_polynomial(&full).unwrap(), d);
        assert!(alexander_polynomial(&ModulePresentation::with_default_names(LaurentMat::identity(1))).unwrap().is_one());
        assert!(alexander_polynomial(&ModulePresentation::free(1)).unwrap().is_zero());
    }
}
