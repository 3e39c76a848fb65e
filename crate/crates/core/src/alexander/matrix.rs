use super::laurent::{parse_laurent, LaurentPoly};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

/// Dense matrix over Λ, row-major.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct LaurentMat {
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "ser_entries", rename = "entries")]
    data: Vec<LaurentPoly>,
}

fn ser_entries<S: serde::Serializer>(d: &[LaurentPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(d.len()))?;
    for e in d {
        seq.serialize_element(&e.to_string())?;
    }
    seq.end()
}

impl LaurentMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMat { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(LaurentMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn column(v: &[LaurentPoly]) -> Self {
        LaurentMat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    /// [self | o]
    pub fn hcat(&self, o: &LaurentMat) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::Dimension(format!("hcat {}x{} with {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn mul(&self, o: &LaurentMat) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        Ok(self.mul(&Self::column(v))?.col(0))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        LaurentMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e * c).collect() }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst += c·row_src
    pub fn add_row(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            if !v.is_zero() {
                let n = self.get(dst, j) + &(c * v);
                self.set(dst, j, n);
            }
        }
    }

    /// col_dst += c·col_src
    pub fn add_col(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        for i in 0..self.rows {
            let v = self.get(i, src);
            if !v.is_zero() {
                let n = self.get(i, dst) + &(c * v);
                self.set(i, dst, n);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &LaurentPoly) {
        for j in 0..self.cols {
            let n = self.get(i, j) * c;
            self.set(i, j, n);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &LaurentPoly) {
        for i in 0..self.rows {
            let n = self.get(i, j) * c;
            self.set(i, j, n);
        }
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut m = self.clone();
        let mut prev = LaurentPoly::one();
        let mut neg = false;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        neg = !neg;
                    }
                    None => return Ok(LaurentPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(m.get(i, j) * m.get(k, k)) - &(m.get(i, k) * m.get(k, j));
                    let v = v.exact_div(&prev).ok_or_else(|| Error::Internal("Bareiss division".into()))?;
                    m.set(i, j, v);
                }
                m.set(i, k, LaurentPoly::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if neg { -d } else { d })
    }

    pub fn eval(&self, x: &BigRational) -> Result<Vec<Vec<BigRational>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(x)).collect()).collect()
    }
}

/// Rank over ℚ by Gaussian elimination.
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let d = &f * &a[rank][j];
                    a[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for LaurentMat {
    /// One row per line, entries separated by `, `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentMat {}x{}\n{}", self.rows, self.cols, self)
    }
}

/// Rows separated by newlines or `;`, entries by `,`. `#` starts a comment.
pub fn parse_matrix(s: &str) -> Result<LaurentMat> {
    let mut rows = Vec::new();
    for line in s.lines().flat_map(|l| l.split('#').next().unwrap_or("").split(';')) {
        if line.trim().is_empty() {
            continue;
        }
        rows.push(line.split(',').map(|e| parse_laurent(e.trim())).collect::<Result<Vec<_>>>()?);
    }
    if rows.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty matrix".into() });
    }
    LaurentMat::from_rows(rows)
}
