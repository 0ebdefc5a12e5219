//! Exact graded exterior algebra over R^m (m <= 6) with complex scalar or
//! Lie-algebra-valued coefficients.

pub mod exact;
pub mod form;
pub mod laform;
pub mod lie;

pub use exact::QForm;
pub use form::Form;
pub use laform::{LaForm, LaFormRepr, LaTermRepr};
pub use lie::LieAlgebraData;
