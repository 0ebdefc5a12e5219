//! Small dense linear-algebra helpers shared by the reduction and torus
//! modules: null spaces, orthonormalization, principal angles, signatures.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::clifford::matrices::{CMat, CVec};

/// Right null space of a real matrix; wide inputs are zero-padded.
pub fn real_nullspace(a: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let (rows, cols) = a.shape();
    let work = if rows < cols {
        let mut padded = DMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut out = Vec::new();
    for i in 0..v_t.nrows() {
        let sv = if i < svd.singular_values.len() {
            svd.singular_values[i]
        } else {
            0.0
        };
        if sv <= tol * (1.0 + max_sv) {
            out.push(v_t.row(i).transpose());
        }
    }
    out
}

/// Columns-as-basis matrix from a list of vectors.
pub fn columns(vectors: &[DVector<f64>]) -> DMatrix<f64> {
    let rows = vectors.first().map(|v| v.len()).unwrap_or(0);
    let mut m = DMatrix::zeros(rows, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        m.set_column(c, v);
    }
    m
}

pub fn columns_c(vectors: &[CVec]) -> CMat {
    let rows = vectors.first().map(|v| v.len()).unwrap_or(0);
    let mut m = CMat::zeros(rows, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        m.set_column(c, v);
    }
    m
}

/// Euclidean orthonormal basis of the column span, rank-truncated.
pub fn orthonormalize(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > tol * (1.0 + max_sv))
        .count();
    u.columns(0, rank).into_owned()
}

pub fn orthonormalize_c(m: &CMat, tol: f64) -> CMat {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > tol * (1.0 + max_sv))
        .count();
    u.columns(0, rank).into_owned()
}

/// Cosines of the principal angles between two column spans (complex),
/// clamped to [0, 1] and sorted descending.
pub fn principal_angle_cosines_c(a: &CMat, b: &CMat) -> Vec<f64> {
    let qa = orthonormalize_c(a, 1e-12);
    let qb = orthonormalize_c(b, 1e-12);
    let prod = qa.adjoint() * qb;
    let svd = prod.svd(false, false);
    let mut cos: Vec<f64> = svd.singular_values.iter().map(|&s| s.clamp(0.0, 1.0)).collect();
    cos.sort_by(|x, y| y.partial_cmp(x).unwrap());
    cos
}

/// Subspace-equality residual: sin of the largest principal angle, computed
/// stably as the norm of the projection defect in both directions. Subspaces
/// of different dimension yield 1.
pub fn subspace_residual_c(a: &CMat, b: &CMat) -> f64 {
    let qa = orthonormalize_c(a, 1e-12);
    let qb = orthonormalize_c(b, 1e-12);
    if qa.ncols() != qb.ncols() {
        return 1.0;
    }
    if qa.ncols() == 0 {
        return 0.0;
    }
    let defect_ab = (&qb - &qa * (qa.adjoint() * &qb)).norm();
    let defect_ba = (&qa - &qb * (qb.adjoint() * &qa)).norm();
    defect_ab.max(defect_ba)
}

pub fn subspace_residual_r(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    subspace_residual_c(
        &a.map(|x| Complex64::new(x, 0.0)),
        &b.map(|x| Complex64::new(x, 0.0)),
    )
}

/// Signature (positive, negative, null) of a symmetric bilinear form.
pub fn signature(gram: &DMatrix<f64>, tol: f64) -> (usize, usize, usize) {
    let sym = (gram + gram.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let max = eig.eigenvalues.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    let mut pos = 0;
    let mut neg = 0;
    let mut null = 0;
    for &l in eig.eigenvalues.iter() {
        if l > tol * (1.0 + max) {
            pos += 1;
        } else if l < -tol * (1.0 + max) {
            neg += 1;
        } else {
            null += 1;
        }
    }
    (pos, neg, null)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_symmetric_eigenvalue(gram: &DMatrix<f64>) -> f64 {
    let sym = (gram + gram.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Hermitian null space: eigenvectors of a PSD Hermitian matrix with
/// eigenvalue below tol (relative to the largest).
pub fn hermitian_kernel(h: &CMat, tol: f64) -> Vec<CVec> {
    crate::gcs::fiber::complex_nullspace(h, tol)
}

/// Rank of a complex matrix at relative tolerance.
pub fn rank_c(a: &CMat, tol: f64) -> usize {
    if a.ncols() == 0 || a.nrows() == 0 {
        return 0;
    }
    let svd = a.clone().svd(false, false);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.singular_values
        .iter()
        .filter(|&&s| s > tol * (1.0 + max_sv))
        .count()
}
