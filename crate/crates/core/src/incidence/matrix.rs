use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// All-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![1; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = d.checked_add(a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?).ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("{} columns, vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Exact division of every entry, if possible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if self.data.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x / k).collect() })
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut out = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// First cell where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.rows * self.cols).find(|&t| self.data[t] != other.data[t]).map(|t| (t / self.cols, t % self.cols))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = IntMatrix::from_rows(&[vec![0, 3], vec![1, 0]]).unwrap();
        assert_eq!(a.mul(&a).unwrap(), IntMatrix::identity(2).scale(3));
        assert_eq!(a.transpose().get(0, 1), 1);
        assert_eq!(a.mat_vec(&[1, 1]).unwrap(), vec![3, 1]);
        let k = IntMatrix::ones(2, 2).kron(&IntMatrix::identity(2));
        assert_eq!(k.row_sums(), vec![2, 2, 2, 2]);
        assert_eq!(k.get(2, 0), 1);
        assert_eq!(a.to_csv(), "0,3\n1,0\n");
        assert!(IntMatrix::from_rows(&[vec![1], vec![1, 2]]).is_err());
        assert_eq!(a.first_difference(&a.scale(2)), Some((0, 1)));
    }
}
