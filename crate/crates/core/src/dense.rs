//! Small dense square matrices over `Q(i)`, used for the coefficient matrix
//! `B` and its congruences.

use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl DenseMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {n} (matrix must be square)",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(DenseMatrix { n, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, entries: vec![GaussianRational::zero(); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        DenseMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(GaussianRational::conj)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x * c)
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.n, self.n, rhs.n, rhs.n)));
        }
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = GaussianRational::zero();
                for k in 0..self.n {
                    acc += &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(j, i) == self.get(i, j).conj()))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(j, i) == self.get(i, j)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Gaussian elimination on a copy.
    pub fn determinant(&self) -> GaussianRational {
        let n = self.n;
        let mut a = self.rows();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return GaussianRational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inv().expect("nonzero pivot");
            let (top, rest) = a.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in rest.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] * &inv;
                for (c, x) in pivot_row.iter().enumerate().skip(col) {
                    row[c] -= &(&f * x);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let s = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &s;
                inv[col][c] = &inv[col][c] * &s;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let da = &f * &a[col][c];
                    a[r][c] -= &da;
                    let di = &f * &inv[col][c];
                    inv[r][c] -= &di;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Parses `a,b;c,d` (rows split on `;`, entries on `,`). Whitespace
    /// around entries is ignored. Error positions are byte offsets into `text`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for row_text in text.split(';') {
            let mut row = Vec::new();
            let mut entry_off = offset;
            for entry in row_text.split(',') {
                let lead = entry.len() - entry.trim_start().len();
                let value = GaussianRational::parse(entry.trim()).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::Parse { pos: pos + entry_off + lead, msg },
                    other => other,
                })?;
                row.push(value);
                entry_off += entry.len() + 1;
            }
            rows.push(row);
            offset += row_text.len() + 1;
        }
        Self::from_rows(rows)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for DenseMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let m = DenseMatrix::parse("2,1;1,2").unwrap();
        assert_eq!(m, DenseMatrix::from_ints(&[&[2, 1], &[1, 2]]).unwrap());
        assert_eq!(m.to_string(), "2,1;1,2");
        let h = DenseMatrix::parse("1, i; -i, 1").unwrap();
        assert_eq!(h.to_string(), "1,i;-i,1");
        assert!(h.is_hermitian());
        assert!(!h.is_symmetric());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(DenseMatrix::parse("1,2;3"), Err(Error::Dimension(_))));
        match DenseMatrix::parse("1,2;3,x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let m = DenseMatrix::from_ints(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(m.determinant(), 3.into());
        let inv = m.inverse().unwrap();
        assert_eq!(inv.scale(&3.into()), DenseMatrix::from_ints(&[&[2, -1], &[-1, 2]]).unwrap());
        assert!(m.mul(&inv).unwrap().is_identity());
        let singular = DenseMatrix::parse("1,i;-i,1").unwrap();
        assert!(singular.determinant().is_zero());
        assert_eq!(singular.inverse(), Err(Error::Singular));
        let perm = DenseMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(perm.determinant(), (-1).into());
    }
}
