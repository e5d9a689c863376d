//! Lattice, unitary transforms and Fourier multipliers on the periodic box.

mod fft;
mod field;
mod grid;
mod multiplier;

pub use fft::transform_line;
pub use field::{Repr, SpectralField};
pub use grid::Grid;
pub(crate) use multiplier::check_s;
pub use multiplier::{
    apply_multiplier, bessel_derivative, cutoff_phi, frac_derivative, gradient, lp_block,
    smooth_step, symbol_m, MultiplierSpec, M_DEFINITION, PHI_DEFINITION,
};
