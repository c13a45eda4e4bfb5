//! Dense matrices over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Column vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from columns of equal length `n`.
    pub fn from_columns(n: usize, columns: &[Vector]) -> Self {
        let mut m = Mat::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Mat::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Elementary matrix with a single one at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(rows, cols);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Mat {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)] += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Mat) -> Mat {
        &(self * rhs) - &(rhs * self)
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square(), "power of non-square matrix");
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Row-major flattening, the coordinates used for spaces of endomorphisms.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn unflatten(n: usize, v: &[Scalar]) -> Mat {
        assert_eq!(v.len(), n * n, "flattened length");
        Mat {
            rows: n,
            cols: n,
            data: v.to_vec(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(red.submatrix(0..n, n..2 * n))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if m[(c, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        det
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Submatrix on arbitrary index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row0 + i, col0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// True if some power of the matrix vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// Smallest `m` with `self^m = 0`, if nilpotent.
    pub fn nilpotency_order(&self) -> Option<u32> {
        if !self.is_square() {
            return None;
        }
        let mut p = Mat::identity(self.rows);
        for m in 0..=self.rows as u32 {
            if p.is_zero() {
                return Some(m);
            }
            p = &p * self;
        }
        None
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

pub fn conj_vec(v: &[Scalar]) -> Vector {
    v.iter().map(Scalar::conj).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn scale_vec(v: &[Scalar], s: &Scalar) -> Vector {
    v.iter().map(|x| x * s).collect()
}

/// `u + s·v`
pub fn axpy(u: &[Scalar], s: &Scalar, v: &[Scalar]) -> Vector {
    u.iter()
        .zip(v)
        .map(|(a, b)| if b.is_zero() { a.clone() } else { a + &(s * b) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let m = Mat::from_ints(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(3));
        assert_eq!(m.determinant(), Scalar::from_int(18));
        assert!(Mat::from_ints(&[[1, 2], [2, 4]]).inverse().is_err());
    }

    #[test]
    fn nilpotency() {
        let j = Mat::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(j.nilpotency_order(), Some(3));
        assert!(!Mat::identity(2).is_nilpotent());
    }

    #[test]
    fn flatten_roundtrip() {
        let m = Mat::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(Mat::unflatten(2, &m.flatten()), m);
    }
}
