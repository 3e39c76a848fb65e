use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element `rat + irr·√2` of ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QSqrt2 {
    pub rat: BigRational,
    pub irr: BigRational,
}

impl QSqrt2 {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        QSqrt2 { rat, irr }
    }

    pub fn from_rational(r: BigRational) -> Self {
        QSqrt2 { rat: r, irr: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn sqrt2() -> Self {
        QSqrt2 { rat: BigRational::zero(), irr: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QSqrt2 { rat: self.rat.clone(), irr: -self.irr.clone() }
    }

    /// rat² − 2·irr², nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(BigInt::from(2)) * &self.irr * &self.irr
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QSqrt2 { rat: &self.rat / &n, irr: -(&self.irr / &n) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QSqrt2 { rat: &self.rat * r, irr: &self.irr * r }
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 { rat: &self.rat + &o.rat, irr: &self.irr + &o.irr }
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 { rat: &self.rat - &o.rat, irr: &self.irr - &o.irr }
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        if o.irr.is_zero() {
            return self.scale(&o.rat);
        }
        if self.irr.is_zero() {
            return o.scale(&self.rat);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            rat: &self.rat * &o.rat + two * &self.irr * &o.irr,
            irr: &self.rat * &o.irr + &self.irr * &o.rat,
        }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { rat: -self.rat.clone(), irr: -self.irr.clone() }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.rat)),
            (true, false) => write!(f, "{}*r2", fmt_rat(&self.irr)),
            (false, false) => {
                let sign = if self.irr.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}*r2)", fmt_rat(&self.rat), sign, fmt_rat(&self.irr.abs()))
            }
        }
    }
}
