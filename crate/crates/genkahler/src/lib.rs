//! Linear-algebraic verification kit for generalized Kähler geometry.
//!
//! The crate has three layers:
//!
//! * exact fiber algebra: exterior forms over R^m with complex or
//!   Lie-algebra-valued coefficients, the Clifford action of V ⊕ V* on
//!   forms, Chevalley pairing, generalized metrics and the generalized
//!   Hodge star ([`exterior`], [`clifford`]);
//! * pointwise structures and their reduction: generalized complex and
//!   Kähler fibers with their spinor decompositions, and the fiberwise
//!   linear algebra of Courant reduction ([`gcs`], [`reduction`]);
//! * a Fourier-truncated lab on the flat 4-torus that assembles the twisted
//!   instanton complex per frequency and certifies the operator identities
//!   of its Hodge theory ([`torus`]).
//!
//! The `genk` binary drives scenario files through the check suite and
//! emits JSON/CSV reports; see the repository README.

pub mod catalog;
pub mod linalg;
pub mod clifford;
pub mod error;
pub mod exterior;
pub mod gcs;
pub mod reduction;
pub mod report;
pub mod scenario;
pub mod torus;

pub use error::{GkError, Result};
