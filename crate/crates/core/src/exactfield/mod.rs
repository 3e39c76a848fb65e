//! Exact arithmetic in ℚ(√2)(X₁,…,Xₙ).

mod elem;
mod parse;
mod poly;
mod qsqrt2;

pub use elem::{fe_arith, fe_eq, fe_inv, fe_substitute, ArithOp, FieldElem, Vars};
pub use parse::{collect_vars, parse_field, parse_field_auto};
pub(crate) use parse::{Cursor, FieldParser};
pub use poly::{Exponents, MultiPoly};
pub use qsqrt2::QSqrt2;

use std::sync::Arc;

/// A fixed variable list shared by every element of one computation.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    vars: Vars,
}

impl FieldCtx {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        FieldCtx { vars: Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()) }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var(&self, name: &str) -> FieldElem {
        FieldElem::var(&self.vars, name).expect("variable not in context")
    }

    pub fn int(&self, n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    pub fn parse(&self, s: &str) -> crate::error::Result<FieldElem> {
        parse_field(s, &self.vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn ctx() -> FieldCtx {
        FieldCtx::new(&["s", "t", "u"])
    }

    #[test]
    fn u_plus_one_minus_u() {
        let c = ctx();
        let u = c.var("u");
        assert_eq!(&u + &(&c.int(1) - &u), c.int(1));
    }

    #[test]
    fn sqrt2_squared() {
        let r = FieldElem::sqrt2();
        assert_eq!(&r * &r, FieldElem::from_int(2));
    }

    #[test]
    fn translation_rescaling() {
        let c = ctx();
        let t = c.var("t");
        let a = c.int(2);
        let d = &(&a * &a) - &c.int(1);
        let lhs = &(&t / &d) + &t;
        assert_eq!(lhs, c.parse("4/3*t").unwrap());
    }

    #[test]
    fn inverses() {
        let c = ctx();
        let u = c.var("u");
        assert_eq!(fe_inv(&u).unwrap().to_string(), "1/u");
        let x = c.parse("1+r2").unwrap();
        assert_eq!(fe_inv(&x).unwrap(), c.parse("-1+r2").unwrap());
        let mut m = BTreeMap::new();
        m.insert("t".to_string(), FieldElem::from_int(2));
        let e = c.parse("t-2").unwrap().substitute(&m).unwrap();
        assert!(fe_inv(&e).is_err());
    }

    #[test]
    fn equality_examples() {
        let c = ctx();
        assert!(fe_eq(&c.parse("u*(1-u)").unwrap(), &c.parse("u-u^2").unwrap()));
        assert!(fe_eq(&c.parse("t+s").unwrap(), &c.parse("s+t").unwrap()));
        assert!(!fe_eq(&c.parse("u^-1").unwrap(), &c.parse("2-u").unwrap()));
    }

    #[test]
    fn substitution_examples() {
        let c = FieldCtx::new(&["t", "u"]);
        let mut m = BTreeMap::new();
        m.insert("t".to_string(), c.parse("1/2").unwrap());
        assert!(c.parse("2*t^2-5*t+2").unwrap().substitute(&m).unwrap().is_zero());
        let mut m = BTreeMap::new();
        m.insert("u".to_string(), FieldElem::from_int(3));
        assert_eq!(c.parse("u^2-1").unwrap().substitute(&m).unwrap(), FieldElem::from_int(8));
    }

    #[test]
    fn univariate_fractions_reduce() {
        let c = ctx();
        let e = c.parse("(u^2-1)/(u-1)").unwrap();
        assert_eq!(e.to_string(), "u+1");
        assert!(e.is_canonical());
    }

    #[test]
    fn serialization_round_trips() {
        let c = ctx();
        for s in ["(s+t)/u^2", "-3/2*r2*t", "(1+r2)*s*u-1/(u^2+u+1)", "-u^-1", "0", "(2-r2)/(u-r2)"] {
            let e = c.parse(s).unwrap();
            let printed = e.to_string();
            let back = c.parse(&printed).unwrap();
            assert_eq!(back, e, "{}", s);
            assert_eq!(back.to_string(), printed);
        }
    }

    #[test]
    fn mismatched_contexts_error() {
        let a = FieldCtx::new(&["u"]).var("u");
        let b = FieldCtx::new(&["v"]).var("v");
        assert!(fe_arith(ArithOp::Add, &a, &b).is_err());
        assert!(fe_arith(ArithOp::Add, &a, &FieldElem::one()).is_ok());
    }
}
