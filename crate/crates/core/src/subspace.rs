//! Subspaces of `C^n` in canonical reduced-echelon form.
//!
//! A subspace is stored through the reduced row echelon form of the matrix
//! whose rows are its basis vectors. That form is unique, so two subspaces are
//! equal exactly when their stored bases are identical and `==` is syntactic.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{self, Mat, Vector};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| matrix::unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I, V>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    /// Span of the coordinate vectors `e_i`, `i ∈ indices`.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Subspace::span(ambient, indices.into_iter().map(|i| matrix::unit_vector(ambient, i)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// The canonical basis vectors.
    pub fn basis_vectors(&self) -> &[Vector] {
        &self.rows
    }

    /// Canonical basis as the columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> Mat {
        Mat::from_columns(self.ambient, &self.rows)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        w
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient");
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[c].inv().expect("nonzero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && matrix::is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member with respect to the canonical basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (mut big, small) = if self.dim() >= other.dim() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for v in &small.rows {
            big.insert(v);
        }
        Ok(big)
    }

    /// The annihilator `{y : yᵀx = 0 for all x}` under the bilinear pairing.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..n).filter(|&f| !is_pivot[f]).map(|f| {
            let mut x = matrix::unit_vector(n, f);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -&row[f];
            }
            x
        });
        Subspace::span(n, vectors)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        if self.contains_subspace(other) {
            return Ok(other.clone());
        }
        if other.contains_subspace(self) {
            return Ok(self.clone());
        }
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Entrywise conjugate; the result is already canonical.
    pub fn conjugate(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            rows: self.rows.iter().map(|v| matrix::conj_vec(v)).collect(),
            pivots: self.pivots.clone(),
        }
    }

    /// Stable under conjugation, i.e. defined over the reals.
    pub fn is_real(&self) -> bool {
        self.rows.iter().all(|v| v.iter().all(Scalar::is_real))
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Mat) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map does not act on ambient".into()));
        }
        Ok(Subspace::span(m.rows(), self.rows.iter().map(|v| m.mul_vec(v))))
    }

    /// `{v : m·v ∈ self}` for `m` with target the ambient space.
    pub fn preimage(&self, m: &Mat) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch("map does not land in ambient".into()));
        }
        let ann = self.annihilator();
        if ann.is_zero() {
            return Ok(Subspace::full(m.cols()));
        }
        let constraints = &Mat::from_columns(self.ambient, &ann.rows).transpose() * m;
        Ok(kernel(&constraints))
    }

    /// Pivot-based complement of `self` inside `container`: the canonical basis
    /// vectors of `container` that are not already spanned, added greedily.
    pub fn complement_in(&self, container: &Subspace) -> Result<Vec<Vector>> {
        self.check_ambient(container)?;
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &container.rows {
            if acc.insert(v) {
                out.push(v.clone());
            }
        }
        if !container.contains_subspace(self) {
            return Err(Error::Postcondition("subspace not contained in container".into()));
        }
        Ok(out)
    }

    /// Membership test of all the columns of a matrix.
    pub fn contains_columns(&self, m: &Mat) -> bool {
        m.rows() == self.ambient && m.columns().iter().all(|c| self.contains(c))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in C^{}) [", self.dim(), self.ambient)?;
        for v in &self.rows {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, " ({})", s.join(", "))?;
        }
        write!(f, " ]")
    }
}

/// Null space of a matrix.
pub fn kernel(m: &Mat) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n).filter(|&f| !is_pivot[f]).map(|f| {
        let mut x = matrix::unit_vector(n, f);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -&r[(i, f)];
        }
        x
    });
    Subspace::span(n, vectors)
}

/// Column space of a matrix.
pub fn image(m: &Mat) -> Subspace {
    Subspace::span(m.rows(), m.columns())
}

/// Null space of a linear map given by a list of rows, skipping zero rows.
/// Suitable for tall sparse systems.
pub fn kernel_of_rows(cols: usize, rows: impl IntoIterator<Item = Vector>) -> Subspace {
    let mut acc = Subspace::zero(cols);
    for r in rows {
        if matrix::is_zero_vec(&r) {
            continue;
        }
        acc.insert(&r);
        if acc.is_full() {
            break;
        }
    }
    acc.annihilator()
}

/// Coordinates with respect to an arbitrary (not necessarily canonical)
/// basis of a subspace.
#[derive(Clone, Debug)]
pub struct Frame {
    ambient: usize,
    vectors: Vec<Vector>,
    rows: Vec<usize>,
    inverse: Mat,
}

impl Frame {
    pub fn new(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        let d = vectors.len();
        let b = Mat::from_columns(ambient, &vectors);
        let (_, rows) = b.transpose().rref();
        if rows.len() != d {
            return Err(Error::Postcondition("frame vectors are dependent".into()));
        }
        let inverse = b.select(&rows, &(0..d).collect::<Vec<_>>()).inverse()?;
        Ok(Frame {
            ambient,
            vectors,
            rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Coordinates of `v`, assumed to lie in the span.
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        let sel: Vector = self.rows.iter().map(|&i| v[i].clone()).collect();
        self.inverse.mul_vec(&sel)
    }

    /// `Σ c_i v_i`.
    pub fn combine(&self, c: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.ambient];
        for (ci, v) in c.iter().zip(&self.vectors) {
            if !ci.is_zero() {
                out = matrix::axpy(&out, ci, v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn sum_of_coordinate_lines() {
        let a = Subspace::span(2, [v(&[1, 0])]);
        let b = Subspace::span(2, [v(&[1, 1])]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(Subspace::zero(2).sum(&b).unwrap(), b);
    }

    #[test]
    fn intersections() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(3, [v(&[0, 1, 0])]));
        assert_eq!(a.intersect(&Subspace::full(3)).unwrap(), a);
        let e1 = Subspace::span(3, [v(&[1, 0, 0])]);
        let e2 = Subspace::span(3, [v(&[0, 1, 0])]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(a.intersect(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn kernel_and_image() {
        let n = Mat::from_ints(&[[0, 1], [0, 0]]);
        let e1 = Subspace::span(2, [v(&[1, 0])]);
        assert_eq!(kernel(&n), e1);
        assert_eq!(image(&n), e1);
        assert!(kernel(&Mat::identity(3)).is_zero());
    }

    #[test]
    fn conjugation() {
        let line = Subspace::span(2, [vec![Scalar::i(), Scalar::one()]]);
        let expected = Subspace::span(2, [vec![Scalar::gaussian(0, -1), Scalar::one()]]);
        assert_eq!(line.conjugate(), expected);
        assert_eq!(line.conjugate().conjugate(), line);
        let real = Subspace::span(2, [v(&[1, 2])]);
        assert_eq!(real.conjugate(), real);
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, [v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, [v(&[1, 3, 4]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn preimage_and_frame() {
        let n = Mat::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        let e1 = Subspace::span(3, [v(&[1, 0, 0])]);
        assert_eq!(e1.preimage(&n).unwrap(), Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]));
        let f = Frame::new(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 5, 3]);
        assert_eq!(f.coords(&w), v(&[2, 3]));
        assert_eq!(f.combine(&f.coords(&w)), w);
    }
}
