//! Bilinear forms, exact inertia and positivity, and the isometry Lie algebra.

use crate::error::{Error, Result};
use crate::matrix::{self, Mat};
use crate::scalar::Scalar;

/// A real nondegenerate form with `Q(u, v) = (−1)^k Q(v, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    matrix: Mat,
    odd: bool,
    inverse: Mat,
}

impl BilForm {
    /// Validates realness, parity and nondegeneracy. `weight` only matters mod 2.
    pub fn new(matrix: Mat, weight: i32) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("form matrix must be square".into()));
        }
        if !matrix.is_real() {
            return Err(Error::NotReal);
        }
        let odd = weight.rem_euclid(2) == 1;
        let t = matrix.transpose();
        let expected = if odd { -&matrix } else { matrix.clone() };
        if t != expected {
            return Err(Error::WrongParity(if odd {
                "odd weight requires an antisymmetric form".into()
            } else {
                "even weight requires a symmetric form".into()
            }));
        }
        let inverse = matrix.inverse().map_err(|_| Error::Degenerate)?;
        Ok(BilForm {
            matrix,
            odd,
            inverse,
        })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    /// `(−1)^k`
    pub fn parity_sign(&self) -> Scalar {
        Scalar::from_int(if self.odd { -1 } else { 1 })
    }

    /// `Q(u, v) = uᵀ S v`.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        matrix::dot(u, &self.matrix.mul_vec(v))
    }

    /// Gram matrix `Uᵀ S V` between two lists of vectors.
    pub fn gram(&self, us: &[Vec<Scalar>], vs: &[Vec<Scalar>]) -> Mat {
        let svs: Vec<Vec<Scalar>> = vs.iter().map(|v| self.matrix.mul_vec(v)).collect();
        let mut g = Mat::zeros(us.len(), vs.len());
        for (i, u) in us.iter().enumerate() {
            for (j, sv) in svs.iter().enumerate() {
                g[(i, j)] = matrix::dot(u, sv);
            }
        }
        g
    }

    /// Q-adjoint of an endomorphism: `Q(Xu, v) = Q(u, adj(X) v)`.
    pub fn adjoint(&self, x: &Mat) -> Mat {
        &(&self.inverse * &x.transpose()) * &self.matrix
    }
}

/// Inertia `(positive, negative)` of a real symmetric nondegenerate matrix,
/// computed by congruence diagonalization over the rationals.
pub fn signature(s: &Mat) -> Result<(usize, usize)> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch("signature of non-square matrix".into()));
    }
    if !s.is_real() {
        return Err(Error::NotReal);
    }
    if s.transpose() != *s {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    let mut m = s.clone();
    let (mut pos, mut neg) = (0, 0);
    for c in 0..n {
        if m[(c, c)].is_zero() {
            if let Some(p) = (c + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                swap_sym(&mut m, c, p);
            } else if let Some(p) = (c + 1..n).find(|&j| !m[(c, j)].is_zero()) {
                // row/col c += row/col p gives diagonal 2 m[c][p] + m[p][p] = 2 m[c][p]
                add_sym(&mut m, c, p);
            } else {
                return Err(Error::Degenerate);
            }
        }
        let d = m[(c, c)].clone();
        match d.real_sign() {
            Some(std::cmp::Ordering::Greater) => pos += 1,
            Some(std::cmp::Ordering::Less) => neg += 1,
            _ => return Err(Error::Degenerate),
        }
        let inv = d.inv()?;
        // Schur complement of the pivot
        let col: Vec<Scalar> = (0..n).map(|i| m[(i, c)].clone()).collect();
        for i in c + 1..n {
            if col[i].is_zero() {
                continue;
            }
            let f = &col[i] * &inv;
            for j in c + 1..n {
                if col[j].is_zero() {
                    continue;
                }
                let t = &f * &col[j];
                m[(i, j)] -= &t;
            }
        }
        for i in c + 1..n {
            m[(i, c)] = Scalar::zero();
            m[(c, i)] = Scalar::zero();
        }
    }
    Ok((pos, neg))
}

fn swap_sym(m: &mut Mat, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..n {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

fn add_sym(m: &mut Mat, target: usize, src: usize) {
    let n = m.rows();
    for j in 0..n {
        let t = &m[(target, j)] + &m[(src, j)];
        m[(target, j)] = t;
    }
    for i in 0..n {
        let t = &m[(i, target)] + &m[(i, src)];
        m[(i, target)] = t;
    }
}

pub fn is_hermitian(h: &Mat) -> bool {
    h.is_square() && h.conj_transpose() == *h
}

/// Positive definiteness of a Hermitian matrix via leading principal minors.
pub fn hermitian_positive(h: &Mat) -> Result<bool> {
    if !is_hermitian(h) {
        return Err(Error::NotHermitian);
    }
    for k in 1..=h.rows() {
        let minor = h.submatrix(0..k, 0..k).determinant();
        if !minor.is_positive_real() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Xᵀ S + S X = 0`.
pub fn in_isometry_algebra(x: &Mat, q: &BilForm) -> Result<bool> {
    if x.rows() != q.dim() || x.cols() != q.dim() {
        return Err(Error::DimensionMismatch("endomorphism and form".into()));
    }
    let s = q.matrix();
    Ok((&(&x.transpose() * s) + &(s * x)).is_zero())
}

/// The unique `A` with `Q_dst(M u, v) = Q_src(u, A v)` for `M: src → dst`.
pub fn q_adjoint(m: &Mat, q_src: &BilForm, q_dst: &BilForm) -> Result<Mat> {
    if m.cols() != q_src.dim() || m.rows() != q_dst.dim() {
        return Err(Error::DimensionMismatch("map and forms".into()));
    }
    Ok(&(q_src.inverse_matrix() * &m.transpose()) * q_dst.matrix())
}

/// Basis of `g = {X : Xᵀ S + S X = 0}` as `S⁻¹ (E_ij ∓ E_ji)`.
///
/// `S X` is antisymmetric for symmetric `S` and symmetric for
/// antisymmetric `S`, so these elements are independent and span `g`.
pub fn isometry_algebra_basis(q: &BilForm) -> Vec<Mat> {
    let n = q.dim();
    let sinv = q.inverse_matrix();
    let mut out = Vec::new();
    for i in 0..n {
        let start = if q.is_odd() { i } else { i + 1 };
        for j in start..n {
            let mut e = Mat::zeros(n, n);
            if i == j {
                e[(i, i)] = Scalar::one();
            } else {
                e[(i, j)] = Scalar::one();
                e[(j, i)] = if q.is_odd() { Scalar::one() } else { Scalar::from_int(-1) };
            }
            out.push(sinv * &e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&Mat::diagonal(&[1.into(), (-1).into(), 1.into()])).unwrap(), (2, 1));
        assert_eq!(signature(&Mat::identity(4)).unwrap(), (4, 0));
        // [[0,1],[1,0]]: e1+e2 gives 2, then e2 has -1/2 after completing the square.
        assert_eq!(signature(&Mat::from_ints(&[[0, 1], [1, 0]])).unwrap(), (1, 1));
        assert_eq!(signature(&Mat::from_ints(&[[1, 1], [1, 1]])), Err(Error::Degenerate));
        assert_eq!(signature(&Mat::from_ints(&[[1, 2], [0, 1]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn hermitian_examples() {
        assert!(hermitian_positive(&Mat::identity(3)).unwrap());
        let h = Mat::from_rows(vec![
            vec![2.into(), Scalar::i()],
            vec![Scalar::gaussian(0, -1), 1.into()],
        ])
        .unwrap();
        // minors 2 and 2·1 − i·(−i) = 1
        assert!(hermitian_positive(&h).unwrap());
        assert!(!hermitian_positive(&Mat::from_ints(&[[-1]])).unwrap());
        assert_eq!(hermitian_positive(&Mat::from_ints(&[[1, 2], [0, 1]])), Err(Error::NotHermitian));
    }

    #[test]
    fn isometry_membership() {
        let q = BilForm::new(Mat::from_ints(&[[0, 1], [-1, 0]]), 1).unwrap();
        assert!(in_isometry_algebra(&Mat::zeros(2, 2), &q).unwrap());
        assert!(in_isometry_algebra(&Mat::from_ints(&[[0, 1], [0, 0]]), &q).unwrap());
        assert!(!in_isometry_algebra(&Mat::identity(2), &q).unwrap());
        for x in isometry_algebra_basis(&q) {
            assert!(in_isometry_algebra(&x, &q).unwrap());
        }
        assert_eq!(isometry_algebra_basis(&q).len(), 3);
        let q3 = BilForm::new(Mat::identity(3), 0).unwrap();
        assert_eq!(isometry_algebra_basis(&q3).len(), 3);
    }

    #[test]
    fn form_validation() {
        assert_eq!(
            BilForm::new(Mat::from_ints(&[[0, 1], [1, 0]]), 1).unwrap_err(),
            Error::WrongParity("odd weight requires an antisymmetric form".into())
        );
        assert_eq!(BilForm::new(Mat::from_ints(&[[1, 0], [0, 0]]), 0).unwrap_err(), Error::Degenerate);
    }

    #[test]
    fn adjoints() {
        let q = BilForm::new(Mat::diagonal(&[1.into(), 2.into(), (-1).into()]), 0).unwrap();
        assert_eq!(q_adjoint(&Mat::identity(3), &q, &q).unwrap(), Mat::identity(3));
        let m = Mat::from_ints(&[[1, 2, 0], [0, 1, 3], [4, 0, 1]]);
        let a = q_adjoint(&m, &q, &q).unwrap();
        assert_eq!(q_adjoint(&a, &q, &q).unwrap(), m);
        let e = |i| crate::matrix::unit_vector(3, i);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.eval(&m.mul_vec(&e(i)), &e(j)), q.eval(&e(i), &a.mul_vec(&e(j))));
            }
        }
        // orthonormal bases: the adjoint is the transpose
        let id = BilForm::new(Mat::identity(3), 0).unwrap();
        assert_eq!(q_adjoint(&m, &id, &id).unwrap(), m.transpose());
    }
}
