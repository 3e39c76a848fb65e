use super::qsqrt2::QSqrt2;
use std::collections::BTreeMap;

pub type Exponents = Vec<u32>;

/// Polynomial over ℚ(√2) in a fixed number of variables. Keys are exponent
/// vectors compared lexicographically, so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, QSqrt2>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: QSqrt2, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(QSqrt2::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, QSqrt2::one())
    }

    pub fn monomial(e: Exponents, c: QSqrt2) -> Self {
        let nvars = e.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, QSqrt2)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, QSqrt2> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<QSqrt2> {
        match self.terms.len() {
            0 => Some(QSqrt2::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_coeff(&self) -> Option<&QSqrt2> {
        self.terms.values().next_back()
    }

    fn add_term(&mut self, e: Exponents, c: &QSqrt2) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, &(c1 * c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn div_monomial(&self, d: &[u32]) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(d).map(|(a, b)| a - b).collect(), c.clone())).collect(),
        }
    }

    /// Indices of variables with a positive exponent somewhere.
    pub fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    s[i] = true;
                }
            }
        }
        s
    }

    /// Dense coefficients in variable `i`, assuming no other variable occurs.
    pub fn to_univariate(&self, i: usize) -> Vec<QSqrt2> {
        let deg = self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
        let mut v = vec![QSqrt2::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            v[e[i] as usize] = c.clone();
        }
        v
    }

    pub fn from_univariate(i: usize, nvars: usize, coeffs: &[QSqrt2]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            if nvars > 0 {
                e[i] = k as u32;
            }
            p.add_term(e, c);
        }
        p
    }

    /// Re-index into a larger variable list; `map[j]` is the new index of old variable j.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (j, &x) in e.iter().enumerate() {
                ne[map[j]] = x;
            }
            p.add_term(ne, c);
        }
        p
    }
}

pub(crate) fn uni_trim(v: &mut Vec<QSqrt2>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn uni_add(a: &[QSqrt2], b: &[QSqrt2]) -> Vec<QSqrt2> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut r = long.to_vec();
    for (x, y) in r.iter_mut().zip(short) {
        *x = &*x + y;
    }
    uni_trim(&mut r);
    r
}

pub(crate) fn uni_mul(a: &[QSqrt2], b: &[QSqrt2]) -> Vec<QSqrt2> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![QSqrt2::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    uni_trim(&mut r);
    r
}

/// a / g for a divisor g; g = 1 is free.
pub(crate) fn uni_exact_div(a: &[QSqrt2], g: &[QSqrt2]) -> Vec<QSqrt2> {
    if g.len() == 1 && g[0].is_one() {
        return a.to_vec();
    }
    uni_divrem(a, g).0
}

pub(crate) fn uni_divrem(a: &[QSqrt2], b: &[QSqrt2]) -> (Vec<QSqrt2>, Vec<QSqrt2>) {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let mut b = b.to_vec();
    uni_trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let lc_inv = b.last().unwrap().inv().unwrap();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![QSqrt2::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() * &lc_inv;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &(&c * bj);
        }
        q[k] = c;
        r.pop();
        uni_trim(&mut r);
    }
    uni_trim(&mut q);
    (q, r)
}

pub(crate) fn uni_monic(a: &[QSqrt2]) -> Vec<QSqrt2> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.inv().unwrap();
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

pub(crate) fn uni_gcd(a: &[QSqrt2], b: &[QSqrt2]) -> Vec<QSqrt2> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    uni_trim(&mut x);
    uni_trim(&mut y);
    if x.len() == 1 || y.len() == 1 {
        return if x.is_empty() && y.is_empty() { Vec::new() } else { vec![QSqrt2::one()] };
    }
    // monic remainders keep the coefficients from swelling
    y = uni_monic(&y);
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y);
        x = y;
        y = uni_monic(&r);
        if y.len() == 1 {
            return y;
        }
    }
    uni_monic(&x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QSqrt2 {
        QSqrt2::from_int(n)
    }

    #[test]
    fn univariate_gcd_recovers_common_factor() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = vec![q(-2), q(1), q(1)];
        let b = vec![q(3), q(-4), q(1)];
        assert_eq!(uni_gcd(&a, &b), vec![q(-1), q(1)]);
    }

    #[test]
    fn product_and_content() {
        let x = MultiPoly::var(0, 2);
        let y = MultiPoly::var(1, 2);
        let p = x.mul(&y).add(&x.mul(&x).mul(&y));
        assert_eq!(p.monomial_content(), vec![1, 1]);
        assert_eq!(p.div_monomial(&[1, 1]), MultiPoly::one(2).add(&x));
    }
}
