//! Modules over Λ = ℚ[t, t⁻¹]: Smith normal form, cokernel invariants, divisibility of
//! boundary classes and the Alexander polynomial.

mod laurent;
mod matrix;
mod module;
mod snf;

pub use laurent::{lp_gcd_ext, parse_laurent, GcdExt, LaurentPoly};
pub use matrix::{parse_matrix, rational_rank, LaurentMat};
pub use module::{
    alexander_polynomial, check_membership, cokernel, dim_at, genus2_obstruction, ocmt_check, submodule_membership,
    Boundary, CokernelInvariants, Genus2Obstruction, Membership, MembershipWitness, ModulePresentation, OcmtReport,
};
pub use snf::{check_snf, smith_normal_form, SNFResult};
