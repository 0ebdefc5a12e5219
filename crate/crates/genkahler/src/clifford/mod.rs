//! The split-signature quadratic space V ⊕ V*, its spin representation on
//! forms, Chevalley pairing, B-field transforms, generalized metrics and the
//! generalized Hodge star.

pub mod genvector;
pub mod matrices;
pub mod metric;
pub mod star;

pub use genvector::{
    b_transform, b_transform_spinor, chevalley, clifford_act, courant_bracket_const,
    natural_pairing, GenVector,
};
pub use matrices::{chevalley_gram, pairing_gram, spin_lift};
pub use metric::GenMetric;
pub use star::{classical_hodge_star, hodge_star, hodge_star_matrix, sd_asd_project};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Form;
    use nalgebra::SymmetricEigen;
    use num_complex::Complex64;

    #[test]
    fn pairing_signature_is_split() {
        let q = pairing_gram(4);
        let eig = SymmetricEigen::new(q);
        let pos = eig.eigenvalues.iter().filter(|&&l| l > 1e-12).count();
        let neg = eig.eigenvalues.iter().filter(|&&l| l < -1e-12).count();
        assert_eq!((pos, neg), (4, 4));
    }

    #[test]
    fn chevalley_invariant_under_b_transforms() {
        // spin invariance probed through the one-parameter B-action
        let mut state = 17u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..200 {
            let mut b = Form::zero(4);
            for i in 0..4u32 {
                for j in (i + 1)..4u32 {
                    b.set_coeff((1 << i) | (1 << j), Complex64::new(next(), next()));
                }
            }
            let mut a1 = Form::zero(4);
            let mut a2 = Form::zero(4);
            for m in 0..16u32 {
                a1.set_coeff(m, Complex64::new(next(), next()));
                a2.set_coeff(m, Complex64::new(next(), next()));
            }
            let lhs = chevalley(
                &b_transform_spinor(&b, &a1).unwrap(),
                &b_transform_spinor(&b, &a2).unwrap(),
            );
            let rhs = chevalley(&a1, &a2);
            assert!((lhs - rhs).norm() < 1e-11);
        }
    }

    #[test]
    fn chevalley_gram_exports_to_csv_shape() {
        let ch = chevalley_gram(4);
        let csv = crate::report::matrix_csv(&ch);
        assert_eq!(csv.lines().count(), 16);
        assert!(csv.lines().all(|l| l.split(',').count() == 16));
    }
}
