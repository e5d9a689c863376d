//! Pseudo-spectral laboratory for the defocusing cubic nonlinear Schrödinger
//! equation `i u_t + Δu = |u|²u` on periodic boxes in one to three dimensions.
//!
//! The crate is organized bottom-up:
//!
//! - [`spectral`]: lattice, unitary FFT, Fourier multipliers (smooth cutoffs,
//!   Littlewood-Paley blocks, the I-operator, derivatives, free propagator).
//! - [`solver`]: exact free flow, Strang split-step evolution, Picard/Duhamel
//!   iteration, linear–nonlinear splitting, scaling, checkpoints.
//! - [`diagnostics`]: conserved quantities, Sobolev and mixed space-time
//!   norms, admissible pairs, L⁴ interval partitions, energy increments.
//! - [`lab`]: seeded random data, estimate sweeps and power-law fits.
//! - [`cli`]: run configuration and the experiment dispatcher behind the
//!   `nlslab` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod error;
pub mod spectral;
pub mod solver;
pub mod diagnostics;
pub mod lab;
pub mod cli;

pub use error::{Error, Result};
