//! Generalized complex structures and generalized Kähler pairs at a point.

pub mod fiber;
pub mod gk;

pub use fiber::{standard_complex_structure, standard_kahler_form, GcsFiber, IntegrabilityReport};
pub use gk::{
    b_conjugate, matrix_exp_real, orthogonal_conjugate, GkFiber, StarIdentityReport, UPQ_LATTICE,
};
