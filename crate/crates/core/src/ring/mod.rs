//! Exact ground arithmetic.

mod coeff;
mod gauss;
mod scalar;

pub use coeff::{CoeffFn, Var};
pub use gauss::{rat, rat_int, GaussRat, Rat};
pub use scalar::Scalar;

pub(crate) use scalar::{join_terms, render_product, write_power};
