//! Dense matrices over Q.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> Vec<BigRational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = m.get(i, j) + a * o.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Row-echelon elimination; returns (echelon form, determinant factor, rank).
    fn eliminate(&self) -> (QMatrix, BigRational, usize) {
        let mut m = self.clone();
        let mut det = BigRational::one();
        let mut r = 0;
        for c in 0..m.cols {
            let piv = (r..m.rows).find(|&i| !m.get(i, c).is_zero());
            let Some(p) = piv else {
                det = BigRational::zero();
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                det = -det;
            }
            let pv = m.get(r, c).clone();
            det *= &pv;
            for i in r + 1..m.rows {
                let f = m.get(i, c) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, det, r)
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigRational::one();
        }
        let (_, d, r) = self.eliminate();
        if r < self.rows {
            BigRational::zero()
        } else {
            d
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().2
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero())?;
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
            let pv = a.get(c, c).clone();
            for j in 0..n {
                let v = a.get(c, j) / &pv;
                a.set(c, j, v);
                let w = inv.get(c, j) / &pv;
                inv.set(c, j, w);
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                    let w = inv.get(i, j) - &f * inv.get(c, j);
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    /// Solve `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let inv = self.inverse()?;
        Some((0..self.rows).map(|i| (0..self.cols).map(|j| inv.get(i, j) * &b[j]).sum()).collect())
    }

    /// `v^T self w`.
    pub fn bilinear(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                acc += &v[i] * self.get(i, j) * &w[j];
            }
        }
        acc
    }

    /// `B self B^T` for a basis matrix B whose rows are coordinate vectors.
    pub fn gram_of(&self, basis: &[Vec<BigRational>]) -> QMatrix {
        let n = basis.len();
        let mut g = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.bilinear(&basis[i], &basis[j]);
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        g
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.is_integral().then(|| self.to_rows().into_iter().map(|r| r.into_iter().map(|x| x.to_integer()).collect()).collect())
    }

    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }
}

pub fn fmt_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", (0..self.cols).map(|j| fmt_rat(self.get(i, j))).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = QMatrix::from_ints(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(m.det(), q(3));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        let s = QMatrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(), q(0));
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
    }
}
