//! Endomorphism spaces as flattened coordinate spaces, brackets and
//! centralizers.

use crate::error::{Error, Result};
use crate::forms::{self, BilForm};
use crate::matrix::{Mat, Vector};
use crate::subspace::{self, Subspace};

/// The isometry algebra `g` of a form, realized inside `End(V) ≅ C^{n²}`.
#[derive(Clone, Debug)]
pub struct IsometryAlgebra {
    dim_v: usize,
    basis: Vec<Mat>,
}

impl IsometryAlgebra {
    pub fn new(q: &BilForm) -> Self {
        IsometryAlgebra {
            dim_v: q.dim(),
            basis: forms::isometry_algebra_basis(q),
        }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// A (non-canonical) basis of matrices.
    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn subspace(&self) -> Subspace {
        flat_span(self.dim_v, &self.basis)
    }
}

/// Span of endomorphisms in flattened coordinates.
pub fn flat_span(dim_v: usize, mats: &[Mat]) -> Subspace {
    Subspace::span(dim_v * dim_v, mats.iter().map(Mat::flatten))
}

/// The canonical basis of a flattened subspace, as matrices.
pub fn unflatten_basis(dim_v: usize, s: &Subspace) -> Vec<Mat> {
    s.basis_vectors().iter().map(|v| Mat::unflatten(dim_v, v)).collect()
}

/// First pair `(i, j)`, `i < j`, of non-commuting elements.
pub fn first_noncommuting(mats: &[Mat]) -> Option<(usize, usize)> {
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutator(&mats[j]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_abelian(mats: &[Mat]) -> bool {
    first_noncommuting(mats).is_none()
}

/// `{X ∈ ambient : [X, S] = 0 for all generators S}`.
pub fn centralizer_in(ambient: &Subspace, generators: &[Mat]) -> Result<Subspace> {
    let n2 = ambient.ambient_dim();
    let dim_v = (n2 as f64).sqrt().round() as usize;
    if dim_v * dim_v != n2 {
        return Err(Error::DimensionMismatch("ambient is not a space of endomorphisms".into()));
    }
    for g in generators {
        if g.rows() != dim_v || g.cols() != dim_v {
            return Err(Error::DimensionMismatch("generator size".into()));
        }
    }
    Ok(Centralizer::new(ambient.clone()).of(generators))
}

/// Centralizer computations inside a fixed ambient subspace of `End(V)`,
/// reusing the ambient basis across calls.
#[derive(Clone, Debug)]
pub struct Centralizer {
    dim_v: usize,
    ambient: Subspace,
    basis: Vec<Mat>,
}

impl Centralizer {
    pub fn new(ambient: Subspace) -> Self {
        let dim_v = (ambient.ambient_dim() as f64).sqrt().round() as usize;
        let basis = unflatten_basis(dim_v, &ambient);
        Centralizer {
            dim_v,
            ambient,
            basis,
        }
    }

    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Coefficient vectors `c` (in the ambient basis) with `[Σ c_i P_i, S] = 0`.
    pub fn coefficient_space(&self, generators: &[Mat]) -> Subspace {
        let d = self.basis.len();
        let n2 = self.dim_v * self.dim_v;
        let mut rows: Vec<Vector> = Vec::new();
        for s in generators {
            let cols: Vec<Vector> = self.basis.iter().map(|p| p.commutator(s).flatten()).collect();
            for r in 0..n2 {
                if cols.iter().all(|c| c[r].is_zero()) {
                    continue;
                }
                rows.push(cols.iter().map(|c| c[r].clone()).collect());
            }
        }
        subspace::kernel_of_rows(d, rows)
    }

    pub fn of(&self, generators: &[Mat]) -> Subspace {
        let coeffs = self.coefficient_space(generators);
        let n2 = self.dim_v * self.dim_v;
        Subspace::span(
            n2,
            coeffs.basis_vectors().iter().map(|c| self.combine(c).flatten()),
        )
    }

    pub fn combine(&self, c: &[crate::Scalar]) -> Mat {
        let mut out = Mat::zeros(self.dim_v, self.dim_v);
        for (ci, p) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                out = &out + &p.scale(ci);
            }
        }
        out
    }
}
