//! The generalized Hodge star: Clifford action of the oriented volume
//! element of V+, plus the classical Hodge star used as an independent
//! oracle, and the SD/ASD projections in dimension four.

use num_complex::Complex64;

use super::genvector::GenVector;
use super::matrices::{gamma_matrix, CMat};
use super::metric::GenMetric;
use crate::error::{GkError, Result};
use crate::exterior::Form;

/// Matrix of the generalized Hodge star: star = -e_m ... e_2 e_1 acting by
/// the spin representation, for a positive orthonormal basis {e_i} of V+.
pub fn hodge_star_matrix(metric: &GenMetric) -> Result<CMat> {
    let m = metric.dim();
    let basis = metric.v_plus_basis()?;
    let n = 1 << m;
    let mut star = CMat::identity(n, n);
    // apply gamma(e_1) first, then gamma(e_2), ..., i.e. star = -g_m ... g_1
    for v in basis.iter() {
        let flat: Vec<Complex64> = (0..2 * m).map(|r| Complex64::new(v[(r, 0)], 0.0)).collect();
        let gv = GenVector::from_flat(&flat);
        star = gamma_matrix(&gv) * star;
    }
    Ok(-star)
}

pub fn hodge_star(metric: &GenMetric, a: &Form) -> Result<Form> {
    let star = hodge_star_matrix(metric)?;
    let v = super::matrices::form_to_vec(a);
    Ok(super::matrices::vec_to_form(a.dim(), &(star * v)))
}

/// Classical Hodge star for a Riemannian metric g, via the defining relation
/// a ∧ (star b) = <a, b>_g vol_g. Independent of the Clifford route.
pub fn classical_hodge_star(g: &nalgebra::DMatrix<f64>, a: &Form) -> Form {
    let m = a.dim();
    assert_eq!(g.nrows(), m);
    let g_inv = g.clone().try_inverse().expect("metric must be invertible");
    let det = g.determinant();
    let vol_scale = det.sqrt();
    let mut out = Form::zero(m);
    let full = (1u32 << m) - 1;
    for mask in 0..(1u32 << m) {
        let c = a.coeff(mask);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        // star(e_I) = sum_J <e_I, e_J>_g sign(J, J^c) vol_scale e_{J^c}
        // with <,>_g the induced metric on k-forms via g^{-1}
        let k = mask.count_ones() as usize;
        for target in 0..(1u32 << m) {
            if target.count_ones() as usize != k {
                continue;
            }
            let gram = form_gram_entry(&g_inv, mask, target);
            if gram == 0.0 {
                continue;
            }
            let comp = full & !target;
            // sign from e_target ∧ e_comp = sign * vol
            let sign = crate::exterior::form::merge_sign(target, comp);
            out.set_coeff(comp, out.coeff(comp) + c * gram * sign * vol_scale);
        }
    }
    out
}

/// <e_I, e_J> for the metric induced on k-forms: det of the submatrix of
/// g^{-1} with rows I and columns J.
fn form_gram_entry(g_inv: &nalgebra::DMatrix<f64>, i_mask: u32, j_mask: u32) -> f64 {
    let rows: Vec<usize> = (0..g_inv.nrows()).filter(|r| i_mask & (1 << r) != 0).collect();
    let cols: Vec<usize> = (0..g_inv.nrows()).filter(|c| j_mask & (1 << c) != 0).collect();
    if rows.len() != cols.len() {
        return 0.0;
    }
    if rows.is_empty() {
        return 1.0;
    }
    let k = rows.len();
    let mut sub = nalgebra::DMatrix::zeros(k, k);
    for (a, &r) in rows.iter().enumerate() {
        for (b, &c) in cols.iter().enumerate() {
            sub[(a, b)] = g_inv[(r, c)];
        }
    }
    sub.determinant()
}

/// Splits a form into its self-dual and anti-self-dual parts (m = 4 only).
pub fn sd_asd_project(metric: &GenMetric, a: &Form) -> Result<(Form, Form)> {
    if metric.dim() != 4 || a.dim() != 4 {
        return Err(GkError::UnsupportedDimension(a.dim()));
    }
    let star = hodge_star_matrix(metric)?;
    let v = super::matrices::form_to_vec(a);
    let sv = &star * &v;
    let plus = (&v + &sv).scale(0.5);
    let minus = (&v - &sv).scale(0.5);
    Ok((
        super::matrices::vec_to_form(4, &plus),
        super::matrices::vec_to_form(4, &minus),
    ))
}
