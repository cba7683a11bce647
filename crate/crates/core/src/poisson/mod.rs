//! Local functionals, the Poisson bracket on the dual and the Hamiltonian operator.

mod bracket;
mod functional;
mod moments;

pub use bracket::{directional_derivative, hamiltonian_increment, hamiltonian_vector, poisson_bracket};
pub use functional::{tr, Field, FunctionalClass, JetMonomial, JetVar, LocalFunctional, SlicePoint};
pub use moments::{
    exceptional_defect, exceptional_defect_with_sign, generic_points, homomorphism_defect, moment_functional, n_preservation_check,
    n_preservation_functional, n_preservation_structural,
};
