use super::poly::{uni_add, uni_divrem, uni_exact_div, uni_gcd, uni_mul, MultiPoly};
use super::qsqrt2::QSqrt2;
use crate::error::{Error, Result};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Vars = Arc<Vec<String>>;

struct Inner {
    vars: Vars,
    num: MultiPoly,
    den: MultiPoly,
    // true when the representation is unique: den is a monomial, or at most
    // one variable occurs and the fraction is gcd-reduced
    canonical: bool,
}

/// Element of ℚ(√2)(X₁,…,Xₙ) stored as num/den over a fixed variable list.
#[derive(Clone)]
pub struct FieldElem(Arc<Inner>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn fe_arith(op: ArithOp, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

pub fn fe_inv(a: &FieldElem) -> Result<FieldElem> {
    a.inv()
}

pub fn fe_eq(a: &FieldElem, b: &FieldElem) -> bool {
    a.eq_checked(b).unwrap_or(false)
}

pub fn fe_substitute(a: &FieldElem, assignment: &BTreeMap<String, FieldElem>) -> Result<FieldElem> {
    a.substitute(assignment)
}

fn normalize(vars: Vars, num: MultiPoly, den: MultiPoly) -> Result<FieldElem> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = vars.len();
    if num.is_zero() {
        return Ok(FieldElem(Arc::new(Inner { vars, num, den: MultiPoly::one(n), canonical: true })));
    }
    let cn = num.monomial_content();
    let cd = den.monomial_content();
    let c: Vec<u32> = cn.iter().zip(&cd).map(|(a, b)| *a.min(b)).collect();
    let (mut num, mut den) = if c.iter().any(|&x| x > 0) {
        (num.div_monomial(&c), den.div_monomial(&c))
    } else {
        (num, den)
    };
    let support: Vec<usize> = num
        .support()
        .iter()
        .zip(den.support())
        .enumerate()
        .filter(|(_, (a, b))| **a || *b)
        .map(|(i, _)| i)
        .collect();
    let mut canonical = den.is_monomial();
    if support.len() == 1 && !canonical {
        let i = support[0];
        let un = num.to_univariate(i);
        let ud = den.to_univariate(i);
        let g = uni_gcd(&un, &ud);
        if g.len() > 1 {
            num = MultiPoly::from_univariate(i, n, &uni_divrem(&un, &g).0);
            den = MultiPoly::from_univariate(i, n, &uni_divrem(&ud, &g).0);
        }
        canonical = true;
    }
    if support.is_empty() {
        canonical = true;
    }
    let lc = den.leading_coeff().unwrap().inv().unwrap();
    if !lc.is_one() {
        num = num.scale(&lc);
        den = den.scale(&lc);
    }
    Ok(FieldElem(Arc::new(Inner { vars, num, den, canonical })))
}

/// Dense coefficient vectors in the single variable the operands share, if there is one.
/// Such operands came out of `normalize` gcd-reduced with monic denominators.
fn univariate(vars: &Vars, ps: [&MultiPoly; 4]) -> Option<(usize, [Vec<QSqrt2>; 4])> {
    if vars.is_empty() {
        return None;
    }
    let mut var = None;
    for p in ps {
        for (i, b) in p.support().into_iter().enumerate() {
            if b {
                match var {
                    None => var = Some(i),
                    Some(j) if j != i => return None,
                    _ => {}
                }
            }
        }
    }
    let i = var.unwrap_or(0);
    Some((i, ps.map(|p| p.to_univariate(i))))
}

/// num/den already coprime; only the denominator is made monic.
fn from_reduced(vars: Vars, i: usize, num: Vec<QSqrt2>, den: Vec<QSqrt2>) -> FieldElem {
    let n = vars.len();
    if num.is_empty() {
        return FieldElem(Arc::new(Inner { vars, num: MultiPoly::zero(n), den: MultiPoly::one(n), canonical: true }));
    }
    let lc = den.last().expect("nonzero denominator").inv().expect("nonzero leading coefficient");
    let (num, den) = if lc.is_one() {
        (num, den)
    } else {
        (num.iter().map(|c| c * &lc).collect(), den.iter().map(|c| c * &lc).collect())
    };
    let (num, den) = (MultiPoly::from_univariate(i, n, &num), MultiPoly::from_univariate(i, n, &den));
    FieldElem(Arc::new(Inner { vars, num, den, canonical: true }))
}

fn empty_vars() -> Vars {
    Arc::new(Vec::new())
}

impl FieldElem {
    pub fn from_parts(vars: Vars, num: MultiPoly, den: MultiPoly) -> Result<Self> {
        assert_eq!(num.nvars(), vars.len());
        assert_eq!(den.nvars(), vars.len());
        normalize(vars, num, den)
    }

    pub fn from_qsqrt2(c: QSqrt2) -> Self {
        normalize(empty_vars(), MultiPoly::constant(c, 0), MultiPoly::one(0)).unwrap()
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_qsqrt2(QSqrt2::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_qsqrt2(QSqrt2::from_rational(r))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Self::from_qsqrt2(QSqrt2::sqrt2())
    }

    /// The variable `name`, which must occur in `vars`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::MissingAssignment(name.to_string()))?;
        normalize(vars.clone(), MultiPoly::var(i, vars.len()), MultiPoly::one(vars.len()))
    }

    pub fn vars(&self) -> &Vars {
        &self.0.vars
    }

    pub fn num(&self) -> &MultiPoly {
        &self.0.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.0.den
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.num == self.0.den
    }

    pub fn as_constant(&self) -> Option<QSqrt2> {
        let n = self.0.num.as_constant()?;
        let d = self.0.den.as_constant()?;
        Some(&n * &d.inv()?)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().filter(|c| c.is_rational()).map(|c| c.rat)
    }

    /// Bring both operands onto a common variable list. Constants (empty list)
    /// embed into any context; two distinct non-empty lists are an error.
    fn align(&self, o: &Self) -> Result<(Vars, MultiPoly, MultiPoly, MultiPoly, MultiPoly)> {
        let (a, b) = (&self.0, &o.0);
        if Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars {
            return Ok((a.vars.clone(), a.num.clone(), a.den.clone(), b.num.clone(), b.den.clone()));
        }
        if a.vars.is_empty() {
            let n = b.vars.len();
            return Ok((b.vars.clone(), a.num.remap(&[], n), a.den.remap(&[], n), b.num.clone(), b.den.clone()));
        }
        if b.vars.is_empty() {
            let n = a.vars.len();
            return Ok((a.vars.clone(), a.num.clone(), a.den.clone(), b.num.remap(&[], n), b.den.remap(&[], n)));
        }
        Err(Error::VarMismatch(a.vars.to_vec(), b.vars.to_vec()))
    }

    /// Re-express over `vars`, which must contain every variable of `self`.
    pub fn lift_to(&self, vars: &Vars) -> Result<Self> {
        if Arc::ptr_eq(&self.0.vars, vars) {
            return Ok(self.clone());
        }
        let map: Option<Vec<usize>> = self.0.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let map = map.ok_or_else(|| Error::VarMismatch(self.0.vars.to_vec(), vars.to_vec()))?;
        let n = vars.len();
        normalize(vars.clone(), self.0.num.remap(&map, n), self.0.den.remap(&map, n))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let (v, an, ad, bn, bd) = self.align(o)?;
        if let Some((i, [a, b, c, d])) = univariate(&v, [&an, &ad, &bn, &bd]) {
            // a/b + c/d with g = gcd(b, d); only gcd(t, g) can divide the sum
            let g = uni_gcd(&b, &d);
            let (b1, d1) = (uni_exact_div(&b, &g), uni_exact_div(&d, &g));
            let t = uni_add(&uni_mul(&a, &d1), &uni_mul(&c, &b1));
            let g2 = if t.is_empty() { vec![QSqrt2::one()] } else { uni_gcd(&t, &g) };
            return Ok(from_reduced(v, i, uni_exact_div(&t, &g2), uni_mul(&b1, &uni_exact_div(&d, &g2))));
        }
        if ad == bd {
            return normalize(v, an.add(&bn), ad);
        }
        normalize(v, an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let (v, an, ad, bn, bd) = self.align(o)?;
        if let Some((i, [a, b, c, d])) = univariate(&v, [&an, &ad, &bn, &bd]) {
            let (g1, g2) = (uni_gcd(&a, &d), uni_gcd(&c, &b));
            let num = uni_mul(&uni_exact_div(&a, &g1), &uni_exact_div(&c, &g2));
            let den = uni_mul(&uni_exact_div(&b, &g2), &uni_exact_div(&d, &g1));
            return Ok(from_reduced(v, i, num, den));
        }
        normalize(v, an.mul(&bn), ad.mul(&bd))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }

    pub fn neg(&self) -> Self {
        let a = &self.0;
        FieldElem(Arc::new(Inner { vars: a.vars.clone(), num: a.num.neg(), den: a.den.clone(), canonical: a.canonical }))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = &self.0;
        if let Some((i, [n, d, _, _])) = univariate(&a.vars, [&a.num, &a.den, &a.num, &a.den]) {
            return Ok(from_reduced(a.vars.clone(), i, d, n));
        }
        normalize(a.vars.clone(), a.den.clone(), a.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let a = &base.0;
        let k = e.unsigned_abs() as u32;
        normalize(a.vars.clone(), a.num.pow(k), a.den.pow(k))
    }

    pub fn eq_checked(&self, o: &Self) -> Result<bool> {
        if Arc::ptr_eq(&self.0, &o.0) {
            return Ok(true);
        }
        let (_, an, ad, bn, bd) = self.align(o)?;
        if self.0.canonical && o.0.canonical {
            return Ok(an == bn && ad == bd);
        }
        Ok(an.mul(&bd) == bn.mul(&ad))
    }

    pub fn substitute(&self, assignment: &BTreeMap<String, FieldElem>) -> Result<Self> {
        let support = {
            let mut s = self.0.num.support();
            for (i, b) in self.0.den.support().into_iter().enumerate() {
                s[i] |= b;
            }
            s
        };
        let mut values: Vec<Option<FieldElem>> = vec![None; self.0.vars.len()];
        for (i, used) in support.iter().enumerate() {
            let name = &self.0.vars[i];
            match assignment.get(name) {
                Some(v) => values[i] = Some(v.clone()),
                None if *used => return Err(Error::MissingAssignment(name.clone())),
                None => {}
            }
        }
        let eval = |p: &MultiPoly| -> Result<FieldElem> {
            let mut acc = FieldElem::zero();
            for (e, c) in p.terms() {
                let mut t = FieldElem::from_qsqrt2(c.clone());
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t = t.try_mul(&values[i].as_ref().unwrap().pow(k as i64)?)?;
                    }
                }
                acc = acc.try_add(&t)?;
            }
            Ok(acc)
        };
        let d = eval(&self.0.den)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        eval(&self.0.num)?.try_div(&d)
    }

    fn poly_string(&self, p: &MultiPoly) -> String {
        let mut out = String::new();
        for (e, c) in p.terms().iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.0.vars[i].clone() } else { format!("{}^{}", self.0.vars[i], k) })
                .collect();
            let mono = mono.join("*");
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{}", mono)
            } else {
                format!("{}*{}", c, mono)
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn is_atom(s: &str) -> bool {
    let b = s.as_bytes();
    (!b.is_empty() && b.iter().all(|c| c.is_ascii_digit()))
        || (!b.is_empty() && b[0].is_ascii_lowercase() && b.iter().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit()))
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.poly_string(&self.0.num);
        if self.0.den.as_constant().map_or(false, |c| c.is_one()) {
            return write!(f, "{}", num);
        }
        let den = self.poly_string(&self.0.den);
        let num_simple = self.0.num.len() == 1 && !num[1..].contains(['+', '-']);
        let num = if num_simple { num } else { format!("({})", num) };
        let den = if is_atom(&den) { den } else { format!("({})", den) };
        write!(f, "{}/{}", num, den)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        fe_eq(self, o)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.$f(o).expect("field operation on incompatible operands")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}
