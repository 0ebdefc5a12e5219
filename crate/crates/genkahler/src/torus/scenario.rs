//! Truncated Fourier description of Lie-algebra-valued forms on the flat
//! 4-torus with constant metric, constant closed three-form and constant
//! connection, plus the cached per-scenario operator machinery.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::clifford::matrices::{
    chevalley_gram, parity_projector, real_to_complex, wedge_matrix, CMat,
};
use crate::clifford::{hodge_star_matrix, GenMetric};
use crate::error::{GkError, Result};
use crate::exterior::{Form, LaForm, LieAlgebraData};
use crate::gcs::GkFiber;

pub const DIM: usize = 4;
/// moment-map gate: scenarios above this cannot enter instanton-tier checks
pub const GATE_TOL: f64 = 1e-12;

/// Iterates the Fourier modes with |k|_inf <= radius.
pub fn modes(radius: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    let r = radius;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

pub fn neg_mode(k: &[i64; 4]) -> [i64; 4] {
    [-k[0], -k[1], -k[2], -k[3]]
}

/// A validated constant-coefficient scenario on T^4 together with every
/// mode-independent matrix the checks need.
pub struct FourierScenario {
    pub algebra: Arc<LieAlgebraData>,
    pub metric: GenMetric,
    pub g: DMatrix<f64>,
    pub h: Form,
    pub a: LaForm,
    pub gk: Option<GkFiber>,
    pub radius: i64,
    pub tol: f64,
    /// curvature F = [A ∧ A]/2 and the norm of its self-dual part
    pub curvature: LaForm,
    pub f_plus_norm: f64,
    // cached operator machinery (form factor is 16-dimensional)
    pub star: CMat,
    pub p_even: CMat,
    pub p_odd: CMat,
    pub p_sd: CMat,
    pub p_ev_plus: CMat,
    /// wedge matrices for dx^1..dx^4 on the form factor
    pub wedge_dx: [CMat; 4],
    pub wedge_h: CMat,
    /// ad_{A_j} on the Lie factor, j = 1..4
    pub ad_a: [CMat; 4],
    /// bilinear Chevalley Gram on the full (form ⊗ Lie) space
    pub bilinear: CMat,
    /// Hermitian Gram G(u, v) = <u, star conj(v)> and its inverse
    pub hermitian: CMat,
    pub hermitian_inv: CMat,
}

impl FourierScenario {
    pub fn new(
        algebra: Arc<LieAlgebraData>,
        g: DMatrix<f64>,
        h: Form,
        a: LaForm,
        gk: Option<GkFiber>,
        radius: i64,
        tol: f64,
    ) -> Result<Self> {
        if h.dim() != DIM || a.dim() != DIM {
            return Err(GkError::UnsupportedDimension(h.dim().max(a.dim())));
        }
        if !h.is_zero(1e-14) && !h.is_homogeneous(3, 1e-13) {
            return Err(GkError::DegreeMismatch { expected: 3 });
        }
        if !a.is_zero(1e-14) && !a.degree_part(1).add(&a.scale(Complex64::new(-1.0, 0.0))).is_zero(1e-13) {
            return Err(GkError::DegreeMismatch { expected: 1 });
        }
        // reality: the mode-conjugation invariant needs real constant data
        for mask in 0..(1u32 << DIM) {
            if h.coeff(mask).im.abs() > 1e-13 {
                return Err(GkError::Scenario("three-form must be real".into()));
            }
            if a.coeff(mask).iter().any(|c| c.im.abs() > 1e-13) {
                return Err(GkError::Scenario("connection must be real".into()));
            }
        }
        if a.algebra() != &algebra {
            return Err(GkError::AlgebraMismatch);
        }
        let metric = GenMetric::from_g_b(&g, &DMatrix::zeros(DIM, DIM))?;
        if let Some(fiber) = &gk {
            if !h.is_zero(1e-13) {
                return Err(GkError::TierUnavailable(
                    "the generalized Kähler tier requires H = 0".into(),
                ));
            }
            let mismatch = (fiber.metric().mat() - metric.mat()).norm();
            if mismatch > 1e-10 * (1.0 + metric.mat().norm()) {
                return Err(GkError::Scenario(format!(
                    "GK fiber metric differs from the block metric of g (residual {mismatch:.3e})"
                )));
            }
        }
        let star = hodge_star_matrix(&metric)?;
        let p_even = real_to_complex(&parity_projector(DIM, 0));
        let p_odd = real_to_complex(&parity_projector(DIM, 1));
        let idm = CMat::identity(16, 16);
        let p_sd = (&idm + &star).scale(0.5);
        let p_ev_plus = &p_sd * &p_even;
        let wedge_dx = std::array::from_fn(|j| {
            wedge_matrix(&Form::monomial(DIM, &[j + 1], Complex64::new(1.0, 0.0)))
        });
        let wedge_h = wedge_matrix(&h);
        let d = algebra.dim();
        let ad_a = std::array::from_fn(|j| {
            let mut m = CMat::zeros(d, d);
            // ad_{A_j} in coordinates: sum over the Lie components of A_j
            for p in 0..d {
                let coeff = a.coeff(1 << j)[p];
                if coeff.norm() == 0.0 {
                    continue;
                }
                let ad = algebra.ad_basis(p);
                for r in 0..d {
                    for c in 0..d {
                        m[(r, c)] += coeff * ad[r][c];
                    }
                }
            }
            m
        });
        let kappa = {
            let mut k = CMat::zeros(d, d);
            for r in 0..d {
                for c in 0..d {
                    k[(r, c)] = Complex64::new(algebra.kappa()[r][c], 0.0);
                }
            }
            k
        };
        let ch = real_to_complex(&chevalley_gram(DIM));
        let bilinear = ch.kronecker(&kappa);
        let full_star = star.kronecker(&CMat::identity(d, d));
        let hermitian = &bilinear * &full_star;
        // the Hermitian Gram must be real symmetric positive definite
        let sym_res = (&hermitian - hermitian.transpose()).norm();
        if sym_res > 1e-10 * (1.0 + hermitian.norm()) {
            return Err(GkError::Scenario(format!(
                "Hermitian Gram is not symmetric (residual {sym_res:.3e})"
            )));
        }
        let gram_real = hermitian.map(|c| c.re);
        let min_eig = crate::linalg::min_symmetric_eigenvalue(&gram_real);
        if min_eig <= 0.0 {
            return Err(GkError::Scenario(format!(
                "Hermitian Gram is not positive definite (min eigenvalue {min_eig:.3e})"
            )));
        }
        let hermitian_inv = hermitian
            .clone()
            .try_inverse()
            .ok_or_else(|| GkError::Scenario("Hermitian Gram not invertible".into()))?;
        let curvature = a.bracket_wedge(&a)?.scale(Complex64::new(0.5, 0.0));
        let f_plus_norm = {
            // classical self-dual projection of the curvature two-form
            let two = curvature.degree_part(2);
            let mut norm2 = 0.0;
            for p in 0..d {
                let mut comp = Form::zero(DIM);
                for mask in 0..(1u32 << DIM) {
                    comp.set_coeff(mask, two.coeff(mask)[p]);
                }
                let v = crate::clifford::matrices::form_to_vec(&comp);
                let plus = &p_sd * v;
                norm2 += plus.norm_squared();
            }
            norm2.sqrt()
        };
        Ok(FourierScenario {
            algebra,
            metric,
            g,
            h,
            a,
            gk,
            radius,
            tol,
            curvature,
            f_plus_norm,
            star,
            p_even,
            p_odd,
            p_sd,
            p_ev_plus,
            wedge_dx,
            wedge_h,
            ad_a,
            bilinear,
            hermitian,
            hermitian_inv,
        })
    }

    pub fn lie_dim(&self) -> usize {
        self.algebra.dim()
    }

    /// total coefficient-space dimension per mode: 16 * dim(Lie)
    pub fn space_dim(&self) -> usize {
        16 * self.algebra.dim()
    }

    pub fn is_instanton(&self) -> bool {
        self.f_plus_norm <= GATE_TOL * (1.0 + self.a.norm().powi(2))
    }

    /// Typed gate: errors when the moment map is nonzero.
    pub fn require_instanton(&self) -> Result<()> {
        if !self.is_instanton() {
            return Err(GkError::MomentMapNonzero {
                norm: self.f_plus_norm,
            });
        }
        Ok(())
    }

    /// Lifts a 16x16 form-factor operator to the full form ⊗ Lie space.
    pub fn lift_form_op(&self, op: &CMat) -> CMat {
        op.kronecker(&CMat::identity(self.lie_dim(), self.lie_dim()))
    }

    /// The twisted operator at mode k:
    /// d_A^H|_k = 2 pi i (sum k_j dx^j)∧ + sum dx^j ∧ ad_{A_j} + H∧.
    pub fn operator_at(&self, k: &[i64; 4]) -> CMat {
        let d = self.lie_dim();
        let idl = CMat::identity(d, d);
        let mut form_part = CMat::zeros(16, 16);
        for j in 0..4 {
            if k[j] != 0 {
                form_part += &self.wedge_dx[j] * Complex64::new(0.0, 2.0 * std::f64::consts::PI * k[j] as f64);
            }
        }
        form_part += &self.wedge_h;
        let mut out = form_part.kronecker(&idl);
        for j in 0..4 {
            if self.ad_a[j].norm() > 0.0 {
                out += self.wedge_dx[j].kronecker(&self.ad_a[j]);
            }
        }
        out
    }

    /// The untwisted covariant operator d_A at mode k (no H term).
    pub fn operator_a_at(&self, k: &[i64; 4]) -> CMat {
        let d = self.lie_dim();
        let idl = CMat::identity(d, d);
        let mut form_part = CMat::zeros(16, 16);
        for j in 0..4 {
            if k[j] != 0 {
                form_part += &self.wedge_dx[j] * Complex64::new(0.0, 2.0 * std::f64::consts::PI * k[j] as f64);
            }
        }
        let mut out = form_part.kronecker(&idl);
        for j in 0..4 {
            if self.ad_a[j].norm() > 0.0 {
                out += self.wedge_dx[j].kronecker(&self.ad_a[j]);
            }
        }
        out
    }

    /// Hermitian adjoint with respect to the Gram <u, star conj(v)>.
    pub fn adjoint(&self, m: &CMat) -> CMat {
        &self.hermitian_inv * m.adjoint() * &self.hermitian
    }

    /// Global-pairing transpose identity: the bilinear Chevalley Gram pairs
    /// mode k against mode -k.
    pub fn bilinear_pair(&self, u: &nalgebra::DVector<Complex64>, w: &nalgebra::DVector<Complex64>) -> Complex64 {
        (u.transpose() * &self.bilinear * w)[(0, 0)]
    }
}

/// Builds a LaForm embedding of a scalar form into the u(1) fiber.
pub fn scalar_laform(f: &Form) -> LaForm {
    LaForm::from_scalar(f, LieAlgebraData::u1(), &[Complex64::new(1.0, 0.0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    pub fn u1_scenario(h: Form, radius: i64) -> FourierScenario {
        let u1 = LieAlgebraData::u1();
        let a = LaForm::zero(DIM, u1.clone());
        FourierScenario::new(
            u1,
            DMatrix::identity(DIM, DIM),
            h,
            a,
            None,
            radius,
            1e-10,
        )
        .unwrap()
    }

    #[test]
    fn zero_data_operator_vanishes_at_zero_mode() {
        let s = u1_scenario(Form::zero(DIM), 1);
        let d0 = s.operator_at(&[0, 0, 0, 0]);
        assert!(d0.norm() < 1e-15);
        assert!(s.is_instanton());
    }

    #[test]
    fn twisted_operator_at_zero_mode_is_h_wedge() {
        let h = Form::monomial(DIM, &[1, 2, 3], c(1.0));
        let s = u1_scenario(h.clone(), 1);
        let d0 = s.operator_at(&[0, 0, 0, 0]);
        // applied to the constant 0-form it returns H
        let mut probe = nalgebra::DVector::zeros(16);
        probe[0] = c(1.0);
        let image = &d0 * probe;
        let out = crate::clifford::matrices::vec_to_form(DIM, &image);
        assert!(out.sub(&h).is_zero(1e-14));
    }

    #[test]
    fn su2_zero_mode_is_the_adjoint_action() {
        let su2 = LieAlgebraData::su2();
        // A = T3 dx1
        let mut a = LaForm::zero(DIM, su2.clone());
        a.set_coeff(0b0001, &[c(0.0), c(0.0), c(1.0)]);
        let s = FourierScenario::new(
            su2,
            DMatrix::identity(DIM, DIM),
            Form::zero(DIM),
            a,
            None,
            1,
            1e-10,
        )
        .unwrap();
        let d0 = s.operator_at(&[0, 0, 0, 0]);
        // input T1 (0-form): output [T3, T1] dx1 = T2 dx1
        let mut probe = nalgebra::DVector::zeros(48);
        probe[0] = c(1.0); // mask 0, lie index 0
        let image = &d0 * probe;
        // expected at mask 0b0001 (= dx1), lie index 1
        let idx = 1 * 3 + 1;
        assert!((image[idx] - c(1.0)).norm() < 1e-14);
        let total: f64 = image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn moment_gate_rejects_sigma1_sigma2_connection() {
        let su2 = LieAlgebraData::su2();
        let mut a = LaForm::zero(DIM, su2.clone());
        a.set_coeff(0b0001, &[c(1.0), c(0.0), c(0.0)]);
        a.set_coeff(0b0010, &[c(0.0), c(1.0), c(0.0)]);
        let s = FourierScenario::new(
            su2,
            DMatrix::identity(DIM, DIM),
            Form::zero(DIM),
            a,
            None,
            1,
            1e-10,
        )
        .unwrap();
        assert!(!s.is_instanton());
        assert!(s.f_plus_norm > 0.5);
        assert!(matches!(
            s.require_instanton(),
            Err(GkError::MomentMapNonzero { .. })
        ));
    }

    #[test]
    fn commuting_connection_passes_the_gate() {
        let su2 = LieAlgebraData::su2();
        let mut a = LaForm::zero(DIM, su2.clone());
        a.set_coeff(0b0001, &[c(0.0), c(0.0), c(1.0)]);
        a.set_coeff(0b0010, &[c(0.0), c(0.0), c(0.7)]);
        let s = FourierScenario::new(
            su2,
            DMatrix::identity(DIM, DIM),
            Form::zero(DIM),
            a,
            None,
            1,
            1e-10,
        )
        .unwrap();
        assert!(s.is_instanton());
        s.require_instanton().unwrap();
    }

    #[test]
    fn gk_tier_requires_vanishing_h() {
        let gk = GkFiber::flat_kahler().unwrap();
        let u1 = LieAlgebraData::u1();
        let a = LaForm::zero(DIM, u1.clone());
        let err = FourierScenario::new(
            u1,
            DMatrix::identity(DIM, DIM),
            Form::monomial(DIM, &[1, 2, 3], c(1.0)),
            a,
            Some(gk),
            1,
            1e-10,
        );
        assert!(matches!(err, Err(GkError::TierUnavailable(_))));
    }

    #[test]
    fn reality_of_mode_operators() {
        // operators at k and -k are complex conjugates
        let h = Form::monomial(DIM, &[1, 2, 3], c(0.8));
        let s = u1_scenario(h, 2);
        for k in [[1, 0, -2, 1], [2, 2, 2, 2], [0, 1, 0, 0]] {
            let dk = s.operator_at(&k);
            let dmk = s.operator_at(&neg_mode(&k));
            let conj = dk.map(|z| z.conj());
            assert!((conj - dmk).norm() < 1e-13);
        }
    }

    #[test]
    fn mode_iteration_counts() {
        assert_eq!(modes(0).len(), 1);
        assert_eq!(modes(1).len(), 81);
        assert_eq!(modes(2).len(), 625);
    }
}
