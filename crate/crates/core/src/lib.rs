//! Exact symbolic engine for truncated pseudodifferential symbols, the transform relating
//! the ξ- and r-symbol algebras, and the Schrödinger-Virasoro structures built on them.

pub mod cocycles;
pub mod diffop2;
pub mod error;
pub mod expr;
pub mod kacmoody;
pub mod poisson;
pub mod psido;
pub mod ring;
pub mod suites;
pub mod svaction;
pub mod transforms;

pub use error::{Error, Result};
