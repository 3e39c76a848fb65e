use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

/// Where a reported number comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperScript,
    VerifiedCertificate,
    Search,
    AxiomImport,
    Arithmetic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub l_s_cost: Option<usize>,
    pub cl_cost: Option<usize>,
    pub cl_r_cost: Option<usize>,
    pub t2_bound: Option<usize>,
    pub genus_bound: Option<usize>,
    pub provenance: BTreeMap<String, Provenance>,
}

impl BoundReport {
    /// Report for a commutator-length bound relative to R.
    pub fn from_cl_r(cl_r: usize, source: Provenance) -> Self {
        let mut provenance = BTreeMap::new();
        provenance.insert("cl_r_cost".into(), source);
        provenance.insert("genus_bound".into(), Provenance::Arithmetic);
        BoundReport {
            l_s_cost: None,
            cl_cost: None,
            cl_r_cost: Some(cl_r),
            t2_bound: None,
            genus_bound: Some(cl_r + 1),
            provenance,
        }
    }

    pub fn is_consistent(&self) -> bool {
        let t2_ok = match (self.l_s_cost, self.cl_cost, self.t2_bound) {
            (Some(l), Some(c), Some(t)) => t == 5 * l + 2 * c,
            _ => true,
        };
        let g_ok = match (self.cl_r_cost.or(self.t2_bound), self.genus_bound) {
            (Some(c), Some(g)) => g == c + 1,
            _ => true,
        };
        t2_ok && g_ok
    }
}

/// ocl ≤ 5·l_S + 2·cl; genus ≤ that + 1.
pub fn t2_bound(l_s_cost: usize, cl_cost: usize) -> BoundReport {
    let t2 = 5 * l_s_cost + 2 * cl_cost;
    let mut provenance = BTreeMap::new();
    provenance.insert("t2_bound".into(), Provenance::Arithmetic);
    provenance.insert("genus_bound".into(), Provenance::Arithmetic);
    BoundReport {
        l_s_cost: Some(l_s_cost),
        cl_cost: Some(cl_cost),
        cl_r_cost: None,
        t2_bound: Some(t2),
        genus_bound: Some(t2 + 1),
        provenance,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineOutcome {
    pub gcd: BigInt,
    pub overcommutes: bool,
}

/// gcd of u² − 1 over the given integer units; 1 means the translation commutators vanish.
pub fn affine_unit_argument(units: &[BigInt]) -> Result<AffineOutcome> {
    if units.is_empty() {
        return Err(Error::Invalid("no units given".into()));
    }
    let mut g = BigInt::from(0);
    for u in units {
        if u.magnitude() < &2u32.into() {
            return Err(Error::Invalid(format!("unit {} must satisfy |u| >= 2", u)));
        }
        g = g.gcd(&(u * u - 1));
    }
    let overcommutes = g == BigInt::from(1);
    Ok(AffineOutcome { gcd: g, overcommutes })
}
