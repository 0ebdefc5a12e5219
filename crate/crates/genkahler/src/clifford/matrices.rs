//! Matrix realizations of the spinor-space operators: Clifford generators,
//! wedge/contraction multipliers, the Chevalley Gram matrix, and the lift of
//! so(V ⊕ V*) elements to the spin representation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::genvector::{chevalley, clifford_act, GenVector};
use crate::exterior::Form;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;
pub type RMat = DMatrix<f64>;

pub fn form_to_vec(f: &Form) -> CVec {
    CVec::from_iterator(1 << f.dim(), f.coeffs().iter().copied())
}

pub fn vec_to_form(dim: usize, v: &CVec) -> Form {
    let mut f = Form::zero(dim);
    for (mask, c) in v.iter().enumerate() {
        f.set_coeff(mask as u32, *c);
    }
    f
}

/// Matrix of a linear operator on forms, built column by column.
pub fn spinor_matrix(dim: usize, op: impl Fn(&Form) -> Form) -> CMat {
    let n = 1 << dim;
    let mut m = CMat::zeros(n, n);
    for col in 0..n {
        let image = op(&Form::basis(dim, col as u32));
        for (row, c) in image.coeffs().iter().enumerate() {
            m[(row, col)] = *c;
        }
    }
    m
}

/// Clifford generator gamma(v) as a 2^m x 2^m matrix.
pub fn gamma_matrix(v: &GenVector) -> CMat {
    spinor_matrix(v.dim(), |f| clifford_act(v, f))
}

/// Wedge-by-f as a matrix.
pub fn wedge_matrix(f: &Form) -> CMat {
    spinor_matrix(f.dim(), |a| f.wedge(a).expect("same dim"))
}

/// Gram matrix of the natural pairing in the flat (tangent, cotangent) basis.
pub fn pairing_gram(dim: usize) -> RMat {
    let n = 2 * dim;
    let mut q = RMat::zeros(n, n);
    for i in 0..dim {
        q[(i, dim + i)] = 0.5;
        q[(dim + i, i)] = 0.5;
    }
    q
}

/// Chevalley Gram matrix CH[I][J] = (basis_I, basis_J)_Ch; entries are 0/±1
/// and nonzero only when deg I + deg J = m.
pub fn chevalley_gram(dim: usize) -> RMat {
    let n = 1 << dim;
    let mut ch = RMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = chevalley(&Form::basis(dim, i as u32), &Form::basis(dim, j as u32));
            ch[(i, j)] = v.re;
        }
    }
    ch
}

/// Diagonal projector onto even (parity = 0) or odd (parity = 1) degrees.
pub fn parity_projector(dim: usize, parity: u32) -> RMat {
    let n = 1 << dim;
    let mut p = RMat::zeros(n, n);
    for mask in 0..n {
        if (mask as u32).count_ones() % 2 == parity {
            p[(mask, mask)] = 1.0;
        }
    }
    p
}

/// Lift of an so(V ⊕ V*) element to the spin representation.
///
/// Writes J = sum_{a<b} M_ab T_ab with M = J Q^{-1} antisymmetric, where
/// T_ab(v) = <E_b, v> E_a - <E_a, v> E_b, and maps each T_ab to [g_a, g_b]/4.
pub fn spin_lift(dim: usize, j: &CMat) -> CMat {
    let n2 = 2 * dim;
    assert_eq!(j.nrows(), n2);
    let q = pairing_gram(dim).map(|x| Complex64::new(x, 0.0));
    let q_inv = pairing_gram(dim)
        .try_inverse()
        .expect("pairing is nondegenerate")
        .map(|x| Complex64::new(x, 0.0));
    let m = j * &q_inv;
    // sanity: m must be antisymmetric for a pairing-skew j
    let skew_residual = (&m + m.transpose()).norm();
    debug_assert!(
        skew_residual < 1e-8 * (1.0 + m.norm()),
        "spin_lift input is not in so(Q): residual {skew_residual}"
    );
    let _ = q;
    let gammas: Vec<CMat> = (0..n2)
        .map(|a| {
            let v = if a < dim {
                GenVector::tangent(dim, a + 1)
            } else {
                GenVector::cotangent(dim, a - dim + 1)
            };
            gamma_matrix(&v)
        })
        .collect();
    let n = 1 << dim;
    let mut out = CMat::zeros(n, n);
    for a in 0..n2 {
        for b in 0..n2 {
            let c = m[(a, b)];
            if c.norm() == 0.0 {
                continue;
            }
            out += (&gammas[a] * &gammas[b]).scale(0.25) * c;
        }
    }
    out
}

/// Real matrix of a pairing-preserving endomorphism acting on flat vectors.
pub fn apply_endo(mat: &RMat, v: &GenVector) -> GenVector {
    let flat = v.to_flat();
    let n = flat.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for r in 0..n {
        for c in 0..n {
            out[r] += Complex64::new(mat[(r, c)], 0.0) * flat[c];
        }
    }
    GenVector::from_flat(&out)
}

pub fn apply_endo_c(mat: &CMat, v: &GenVector) -> GenVector {
    let flat = v.to_flat();
    let n = flat.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for r in 0..n {
        for c in 0..n {
            out[r] += mat[(r, c)] * flat[c];
        }
    }
    GenVector::from_flat(&out)
}

pub fn real_to_complex(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Frobenius-norm distance, used everywhere residuals are reported.
pub fn mat_residual(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm()
}
