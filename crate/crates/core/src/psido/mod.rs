//! Truncated pseudodifferential symbols.

mod halfint;
mod symbol;

pub use halfint::HalfInt;
pub use symbol::{SymVar, Symbol};
