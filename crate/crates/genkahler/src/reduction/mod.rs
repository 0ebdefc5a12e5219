//! Fiberwise linear algebra of Courant reduction.

pub mod problem;

pub use problem::*;
