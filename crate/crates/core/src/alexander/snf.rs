use super::laurent::LaurentPoly;
use super::matrix::LaurentMat;
use crate::error::{Error, Result};
use serde::Serialize;

/// U·A·V = D with U, V invertible over Λ and D diagonal with d_i | d_{i+1}.
#[derive(Clone, Debug, Serialize)]
pub struct SNFResult {
    pub u: LaurentMat,
    pub d: LaurentMat,
    pub v: LaurentMat,
    /// Nonzero diagonal entries, canonical.
    pub invariant_factors: Vec<LaurentPoly>,
}

impl SNFResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Work {
    u: LaurentMat,
    d: LaurentMat,
    v: LaurentMat,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        self.d.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        self.d.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
    }

    /// Smallest span in the trailing block, ties by position.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in k..self.d.rows {
            for j in k..self.d.cols {
                if let Some(s) = self.d.get(i, j).span() {
                    if best.is_none_or(|(b, _, _)| s < b) {
                        best = Some((s, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row and column k; returns false if a smaller remainder was moved to the pivot.
    fn clear(&mut self, k: usize) -> Result<bool> {
        for i in k + 1..self.d.rows {
            if self.d.get(i, k).is_zero() {
                continue;
            }
            let (q, r) = self.d.get(i, k).div_rem(self.d.get(k, k))?;
            self.add_row(i, k, &-&q);
            if !r.is_zero() {
                self.swap_rows(i, k);
                return Ok(false);
            }
        }
        for j in k + 1..self.d.cols {
            if self.d.get(k, j).is_zero() {
                continue;
            }
            let (q, r) = self.d.get(k, j).div_rem(self.d.get(k, k))?;
            self.add_col(j, k, &-&q);
            if !r.is_zero() {
                self.swap_cols(j, k);
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn smith_normal_form(a: &LaurentMat) -> Result<SNFResult> {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work { u: LaurentMat::identity(m), d: a.clone(), v: LaurentMat::identity(n) };
    let mut k = 0;
    while k < m.min(n) {
        let Some((pi, pj)) = w.pivot(k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            if !w.clear(k)? {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (k + 1..m).find_map(|i| {
                (k + 1..n).find(|&j| !w.d.get(k, k).divides(w.d.get(i, j))).map(|_| i)
            });
            match bad {
                Some(i) => w.add_row(k, i, &LaurentPoly::one()),
                None => break,
            }
        }
        let ui = w.d.get(k, k).canonical_unit().unit_inverse()?;
        w.d.scale_row(k, &ui);
        w.u.scale_row(k, &ui);
        k += 1;
    }
    let invariant_factors: Vec<LaurentPoly> = (0..k).map(|i| w.d.get(i, i).clone()).collect();
    let out = SNFResult { u: w.u, d: w.d, v: w.v, invariant_factors };
    check_snf(a, &out)?;
    Ok(out)
}

/// The exactness conditions, run on every result.
pub fn check_snf(a: &LaurentMat, s: &SNFResult) -> Result<()> {
    if s.u.mul(a)?.mul(&s.v)? != s.d {
        return Err(Error::Internal("SNF: U·A·V ≠ D".into()));
    }
    if !s.d.is_diagonal() {
        return Err(Error::Internal("SNF: D not diagonal".into()));
    }
    for m in [&s.u, &s.v] {
        if !m.det()?.is_unit() {
            return Err(Error::Internal("SNF: transform is not unimodular".into()));
        }
    }
    let diag: Vec<&LaurentPoly> = (0..s.d.rows.min(s.d.cols)).map(|i| s.d.get(i, i)).collect();
    let r = s.invariant_factors.len();
    if diag[..r].iter().zip(&s.invariant_factors).any(|(a, b)| *a != b)
        || diag[r..].iter().any(|x| !x.is_zero())
        || s.invariant_factors.iter().any(|x| x.is_zero() || *x != x.canonical())
    {
        return Err(Error::Internal("SNF: diagonal does not match invariant factors".into()));
    }
    if s.invariant_factors.windows(2).any(|w| !w[0].divides(&w[1])) {
        return Err(Error::Internal("SNF: divisibility chain broken".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::laurent::parse_laurent;
    use crate::alexander::matrix::parse_matrix;

    fn lp(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn examples() {
        let s = smith_normal_form(&LaurentMat::identity(2)).unwrap();
        assert_eq!(s.invariant_factors, vec![LaurentPoly::one(), LaurentPoly::one()]);
        let col = parse_matrix("2*t-5+2*t^-1\nt^-1-2").unwrap();
        assert_eq!(smith_normal_form(&col).unwrap().invariant_factors, vec![lp("t-1/2")]);
        let full = parse_matrix("2*t-5+2*t^-1, t-2\nt^-1-2, 0").unwrap();
        let s = smith_normal_form(&full).unwrap();
        assert_eq!(s.invariant_factors, vec![LaurentPoly::one(), lp("(t-2)*(t-1/2)")]);
    }

    #[test]
    fn zero_and_rectangular() {
        let z = LaurentMat::zeros(2, 3);
        assert!(smith_normal_form(&z).unwrap().invariant_factors.is_empty());
        let m = parse_matrix("t, t^2, 0; 1+t, 0, t-1").unwrap();
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariant_factors[0], LaurentPoly::one());
    }
}
