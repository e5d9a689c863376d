//! Time evolution of `i u_t + Δu = |u|²u`.
//!
//! The Duhamel form used throughout carries the `−i` that the equation
//! implies: `u(t) = e^{itΔ}u₀ − i∫₀ᵗ e^{i(t−τ)Δ}|u|²u(τ)dτ`.

mod checkpoint;
mod config;
mod duhamel;
mod flow;
mod picard;
mod scaling;
mod trajectory;

pub use checkpoint::{read_checkpoint, write_checkpoint, HEADER_LEN, MAGIC, VERSION};
pub use config::{SolverConfig, DIVERGENCE_FACTOR, PHASE_ROTATION_CAP};
pub use duhamel::{duhamel_split, DuhamelSplit};
pub use flow::{
    evolve, free_evolve, linear_trajectory, nonlinear_phase_step, phase_rotation, strang_step,
};
pub use picard::{picard_solve, PicardSolution};
pub use scaling::{choose_lambda, rescale, rescaled_time};
pub use trajectory::Trajectory;
