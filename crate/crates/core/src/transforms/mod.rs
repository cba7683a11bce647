//! Θ, its inverse, the time shift and the looped transform.

mod theta;
mod timeshift;

pub use theta::Theta;
pub use timeshift::{
    minus_two_i_m, rescale_to_xi, schrodinger_invariance_defect, shift_constant, time_shift,
    time_shift_flagged, time_shift_left_inverse,
};
