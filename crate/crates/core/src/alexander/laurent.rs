use crate::error::{Error, Result};
use crate::exactfield::Cursor;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of Λ = ℚ[t, t⁻¹]. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn t() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// Σ c_i t^(low + i).
    pub fn from_coeffs(low: i64, cs: &[BigRational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in cs.iter().enumerate() {
            p.add_term(low + i as i64, c.clone());
        }
        p
    }

    /// t − c
    pub fn t_minus(c: &BigRational) -> Self {
        Self::t() - Self::constant(c.clone())
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of Λ are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// max − min exponent; the Euclidean function on Λ.
    pub fn span(&self) -> Option<u64> {
        Some((self.max_exp()? - self.min_exp()?) as u64)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.values().next_back()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// The unit u with self = u · canonical(self). Zero has unit 1.
    pub fn canonical_unit(&self) -> LaurentPoly {
        match (self.min_exp(), self.leading()) {
            (Some(lo), Some(lc)) => Self::monomial(lo, lc.clone()),
            _ => Self::one(),
        }
    }

    /// Lowest exponent 0, monic.
    pub fn canonical(&self) -> LaurentPoly {
        match (self.min_exp(), self.leading()) {
            (Some(lo), Some(lc)) => self.shift(-lo).scale(&lc.recip()),
            _ => Self::zero(),
        }
    }

    pub fn unit_inverse(&self) -> Result<LaurentPoly> {
        if !self.is_unit() {
            return Err(Error::Invalid(format!("{} is not a unit", self)));
        }
        let (e, c) = self.terms().next().expect("unit");
        Ok(Self::monomial(-e, c.recip()))
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc += c * p;
        }
        Ok(acc)
    }

    /// self = q·b + r with span(r) < span(b), or r = 0.
    pub fn div_rem(&self, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let (Some(bl), Some(bh)) = (b.min_exp(), b.max_exp()) else { return Err(Error::DivisionByZero) };
        let Some(al) = self.min_exp() else { return Ok((Self::zero(), Self::zero())) };
        let lc = b.leading().expect("nonzero").clone();
        let bdeg = bh - bl;
        // polynomial division of t^{−al}·self by t^{−bl}·b
        let mut r = self.shift(-al);
        let bb = b.shift(-bl);
        let mut q = Self::zero();
        while let Some(rh) = r.max_exp() {
            if rh < bdeg {
                break;
            }
            let c = r.leading().expect("nonzero") / &lc;
            let m = Self::monomial(rh - bdeg, c);
            r = &r - &(&m * &bb);
            q = &q + &m;
        }
        Ok((q.shift(al - bl), r.shift(al)))
    }

    pub fn divides(&self, a: &LaurentPoly) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        a.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    pub fn exact_div(&self, b: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Bézout data p·a + q·b = g with g canonical.
#[derive(Clone, Debug, PartialEq)]
pub struct GcdExt {
    pub g: LaurentPoly,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

pub fn lp_gcd_ext(a: &LaurentPoly, b: &LaurentPoly) -> Result<GcdExt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Invalid("gcd of two zeros".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut p0, mut p1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut q0, mut q1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let p2 = &p0 - &(&q * &p1);
        let q2 = &q0 - &(&q * &q1);
        r0 = std::mem::replace(&mut r1, r);
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    let ui = r0.canonical_unit().unit_inverse()?;
    let out = GcdExt { g: &r0 * &ui, p: &p0 * &ui, q: &q0 * &ui };
    if &(&out.p * a) + &(&out.q * b) != out.g || a.exact_div(&out.g).is_none() || b.exact_div(&out.g).is_none() {
        return Err(Error::Internal("Bézout identity".into()));
    }
    Ok(out)
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `2*t-5+2*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{}", e),
            };
            match (a.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{}", fmt_rat(&a))?,
                (true, false) => write!(f, "{}", mono)?,
                (false, false) => write!(f, "{}*{}", fmt_rat(&a), mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Parser;

impl Parser {
    fn expr(&self, c: &mut Cursor) -> Result<LaurentPoly> {
        let mut acc = if c.eat(b'-') { -self.term(c)? } else { self.term(c)? };
        loop {
            if c.eat(b'+') {
                acc = &acc + &self.term(c)?;
            } else if c.eat(b'-') {
                acc = &acc - &self.term(c)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<LaurentPoly> {
        let mut acc = self.power(c)?;
        loop {
            if c.eat(b'*') {
                acc = &acc * &self.power(c)?;
            } else if c.eat(b'/') {
                let d = self.power(c)?;
                if !d.is_unit() {
                    return c.err("can only divide by a unit");
                }
                acc = &acc * &d.unit_inverse()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&self, c: &mut Cursor) -> Result<LaurentPoly> {
        let base = self.atom(c)?;
        if !c.eat(b'^') {
            return Ok(base);
        }
        let e = c.signed_int()?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else if base.is_unit() {
            Ok(base.unit_inverse()?.pow((-e) as u32))
        } else {
            c.err("negative power of a non-unit")
        }
    }

    fn atom(&self, c: &mut Cursor) -> Result<LaurentPoly> {
        if c.eat(b'(') {
            let e = self.expr(c)?;
            c.expect(b')')?;
            return Ok(e);
        }
        if c.eat(b'-') {
            return Ok(-self.power(c)?);
        }
        if let Some(n) = c.integer() {
            return Ok(LaurentPoly::constant(BigRational::from_integer(n)));
        }
        match c.ident() {
            Some(v) if v == "t" => Ok(LaurentPoly::t()),
            Some(v) => c.err(format!("unknown variable `{}`", v)),
            None => c.err("expected a term"),
        }
    }
}

pub fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let mut c = Cursor::new(s, 0);
    let p = Parser.expr(&mut c)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_print() {
        let p = lp("2*t-5+2*t^-1");
        assert_eq!(p.to_string(), "2*t-5+2*t^-1");
        assert_eq!(lp("t^-1 - 2").to_string(), "-2+t^-1");
        assert_eq!(lp("(t-2)*(2*t-1)/t"), p);
        assert_eq!(lp("1/2*t").coeff(1), q(1, 2));
        assert!(parse_laurent("t^-1*(t+1)^-1").is_err());
        assert!(parse_laurent("s").is_err());
    }

    #[test]
    fn gcd_examples() {
        let g = lp_gcd_ext(&lp("t-2"), &lp("2*t-1")).unwrap();
        assert!(g.g.is_one());
        assert_eq!((g.p, g.q), (LaurentPoly::constant(q(-2, 3)), LaurentPoly::constant(q(1, 3))));
        let x = lp("3*t^-2 + 6*t^-1");
        assert_eq!(lp_gcd_ext(&x, &LaurentPoly::zero()).unwrap().g, lp("t+1/2"));
        let g = lp_gcd_ext(&lp("2*t-5+2*t^-1"), &lp("t^-1-2")).unwrap();
        assert_eq!(g.g, lp("t-1/2"));
        assert!(lp_gcd_ext(&LaurentPoly::zero(), &LaurentPoly::zero()).is_err());
    }

    #[test]
    fn division_and_evaluation() {
        let a = lp("2*t^2-5*t+2");
        let (qq, r) = a.div_rem(&lp("t-2")).unwrap();
        assert!(r.is_zero());
        assert_eq!(qq, lp("2*t-1"));
        let (qq, r) = lp("t^3+t^-2").div_rem(&lp("t+1")).unwrap();
        assert_eq!(&(&qq * &lp("t+1")) + &r, lp("t^3+t^-2"));
        assert!(r.is_zero());
        let (qq, r) = lp("t^3+t^-2").div_rem(&lp("t^2+1")).unwrap();
        assert_eq!(&(&qq * &lp("t^2+1")) + &r, lp("t^3+t^-2"));
        assert!(r.span().unwrap() < 2);
        assert_eq!(lp("2*t-5+2*t^-1").eval(&q(1, 2)).unwrap(), q(0, 1));
        assert_eq!(lp("4*t^-3+1").canonical(), lp("t^3+4"));
    }
}
