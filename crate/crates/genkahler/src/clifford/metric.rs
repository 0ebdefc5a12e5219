//! Generalized metrics on V ⊕ V*: validation, eigenbundles, metric splitting.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::matrices::{pairing_gram, RMat};
use crate::error::{GkError, Result};
use crate::exterior::Form;

const AXIOM_TOL: f64 = 1e-9;

/// An orthogonal, self-adjoint automorphism of V ⊕ V* with positive <Gv, v>.
#[derive(Debug, Clone)]
pub struct GenMetric {
    dim: usize,
    mat: RMat,
}

impl GenMetric {
    /// Validates the axioms: G orthogonal and self-adjoint for the natural
    /// pairing (hence G^2 = Id) and <Gv, v> positive definite.
    pub fn new(dim: usize, mat: RMat) -> Result<Self> {
        if mat.nrows() != 2 * dim || mat.ncols() != 2 * dim {
            return Err(GkError::DimensionMismatch {
                expected: 2 * dim,
                got: mat.nrows(),
            });
        }
        let q = pairing_gram(dim);
        let scale = 1.0 + mat.norm();
        let self_adjoint = (mat.transpose() * &q - &q * &mat).norm();
        if self_adjoint > AXIOM_TOL * scale {
            return Err(GkError::InvalidMetric(format!(
                "not self-adjoint for the pairing (residual {self_adjoint:.3e})"
            )));
        }
        let orthogonal = (mat.transpose() * &q * &mat - &q).norm();
        if orthogonal > AXIOM_TOL * scale {
            return Err(GkError::InvalidMetric(format!(
                "not orthogonal for the pairing (residual {orthogonal:.3e})"
            )));
        }
        // <Gv, v> = v^T (QG) v; QG is symmetric by self-adjointness
        let qg = &q * &mat;
        let sym = (&qg + qg.transpose()).scale(0.5);
        let eig = SymmetricEigen::new(sym);
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min <= AXIOM_TOL {
            return Err(GkError::InvalidMetric(format!(
                "<Gv, v> is not positive definite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(GenMetric { dim, mat })
    }

    /// Block metric with Riemannian part g and B-field part b:
    /// the image of (0 g^{-1}; g 0) under the two-form action e^b.
    pub fn from_g_b(g: &RMat, b: &RMat) -> Result<Self> {
        let m = g.nrows();
        if (g - g.transpose()).norm() > AXIOM_TOL * (1.0 + g.norm()) {
            return Err(GkError::InvalidMetric("g must be symmetric".into()));
        }
        if (b + b.transpose()).norm() > AXIOM_TOL * (1.0 + b.norm()) {
            return Err(GkError::InvalidMetric("b must be antisymmetric".into()));
        }
        let g_inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| GkError::InvalidMetric("g is singular".into()))?;
        let mut mat = RMat::zeros(2 * m, 2 * m);
        let top_left = -&g_inv * b;
        let bottom_left = g - b * &g_inv * b;
        let bottom_right = b * &g_inv;
        for i in 0..m {
            for j in 0..m {
                mat[(i, j)] = top_left[(i, j)];
                mat[(i, m + j)] = g_inv[(i, j)];
                mat[(m + i, j)] = bottom_left[(i, j)];
                mat[(m + i, m + j)] = bottom_right[(i, j)];
            }
        }
        GenMetric::new(m, mat)
    }

    /// The Euclidean block metric (g = Id, b = 0).
    pub fn euclidean(dim: usize) -> Self {
        let g = RMat::identity(dim, dim);
        let b = RMat::zeros(dim, dim);
        GenMetric::from_g_b(&g, &b).expect("euclidean block data is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self) -> &RMat {
        &self.mat
    }

    /// Recovers (g, B): the unique two-form shift presenting G in block form.
    /// Returns the Riemannian metric and the B-field as a two-form.
    pub fn metric_split(&self) -> Result<(RMat, Form)> {
        let m = self.dim;
        let g_inv = self.mat.view((0, m), (m, m)).into_owned();
        let g = g_inv
            .try_inverse()
            .ok_or_else(|| GkError::InvalidMetric("upper-right block singular".into()))?;
        let b_mat = -(&g * self.mat.view((0, 0), (m, m)).into_owned());
        // package b as a two-form: B = sum_{i<j} b_ij dx^i ∧ dx^j
        let mut b_form = Form::zero(m);
        for i in 0..m {
            for j in (i + 1)..m {
                let mask = (1u32 << i) | (1u32 << j);
                b_form.set_coeff(mask, Complex64::new(b_mat[(i, j)], 0.0));
            }
        }
        Ok((g, b_form))
    }

    /// Positively oriented, pairing-orthonormal basis of the +1 eigenspace,
    /// as flat length-2m real vectors. Orientation is pulled back from the
    /// tangent space through the anchor projection.
    pub fn v_plus_basis(&self) -> Result<Vec<DMatrix<f64>>> {
        let m = self.dim;
        let (g, b_form) = self.metric_split()?;
        // V+ is the graph of g + b over the tangent space
        let mut b_mat = RMat::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                if i < j {
                    let v = b_form.coeff((1 << i) | (1 << j)).re;
                    b_mat[(i, j)] = v;
                    b_mat[(j, i)] = -v;
                }
            }
        }
        let gb = &g + &b_mat;
        let mut basis: Vec<DMatrix<f64>> = Vec::with_capacity(m);
        for i in 0..m {
            let mut v = DMatrix::zeros(2 * m, 1);
            v[(i, 0)] = 1.0;
            for r in 0..m {
                v[(m + r, 0)] = gb[(r, i)];
            }
            basis.push(v);
        }
        // Gram-Schmidt in the natural pairing (positive definite on V+)
        let q = pairing_gram(m);
        for i in 0..m {
            for j in 0..i {
                let pj = (basis[j].transpose() * &q * &basis[i])[(0, 0)];
                let b_j = basis[j].clone();
                basis[i] -= b_j * pj;
            }
            let norm2 = (basis[i].transpose() * &q * &basis[i])[(0, 0)];
            if norm2 <= 0.0 {
                return Err(GkError::InvalidMetric(
                    "pairing not positive on V+".into(),
                ));
            }
            basis[i] /= norm2.sqrt();
        }
        // orient: determinant of the tangent projections must be positive
        let mut proj = RMat::zeros(m, m);
        for (col, v) in basis.iter().enumerate() {
            for r in 0..m {
                proj[(r, col)] = v[(r, 0)];
            }
        }
        let det = proj.determinant();
        if det.abs() < 1e-12 {
            return Err(GkError::InvalidMetric(
                "V+ does not project isomorphically to the tangent space".into(),
            ));
        }
        if det < 0.0 {
            basis[0] = -basis[0].clone();
        }
        Ok(basis)
    }
}
