use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{check_s, Grid};

/// Largest admissible nonlinear phase rotation per step, `dt · max|u|²`.
pub const PHASE_ROTATION_CAP: f64 = 0.1;

/// Abort when the sup norm exceeds this multiple of its initial value.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid: Grid,
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_stride: usize,
    pub nonlinearity_on: bool,
    /// Regularity index used by the I-operator channels.
    pub s: f64,
    /// I-operator cutoff `N`.
    pub n_cut: f64,
    /// L⁴ space-time smallness budget.
    pub epsilon: f64,
}

impl SolverConfig {
    /// Nonlinear run with `s = 0.76`, the I-operator at the grid's corner
    /// frequency (identity on the lattice) and `ε = 0.1`.
    pub fn new(grid: Grid, dt: f64, t_end: f64) -> Self {
        SolverConfig {
            grid,
            dt,
            t_end,
            snapshot_stride: 1,
            nonlinearity_on: true,
            s: 0.76,
            n_cut: grid.max_frequency(),
            epsilon: 0.1,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.snapshot_stride = stride;
        self
    }

    pub fn linear(mut self) -> Self {
        self.nonlinearity_on = false;
        self
    }

    pub fn with_i_operator(mut self, n_cut: f64, s: f64) -> Self {
        self.n_cut = n_cut;
        self.s = s;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// Number of steps; `dt` is adjusted so that they land exactly on `t_end`.
    pub fn n_steps(&self) -> usize {
        ((self.t_end / self.dt).round() as usize).max(1)
    }

    pub fn effective_dt(&self) -> f64 {
        self.t_end / self.n_steps() as f64
    }

    /// True when the I-operator acts as the identity on every lattice mode.
    pub fn i_is_identity(&self) -> bool {
        self.n_cut >= self.grid.max_frequency()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::OutOfRange {
                name: "dt",
                value: self.dt,
                bound: "dt > 0",
            });
        }
        if !(self.t_end.is_finite() && self.t_end >= self.dt) {
            return Err(Error::OutOfRange {
                name: "t_end",
                value: self.t_end,
                bound: "t_end >= dt",
            });
        }
        if self.snapshot_stride == 0 {
            return Err(Error::OutOfRange {
                name: "snapshot_stride",
                value: 0.0,
                bound: "snapshot_stride >= 1",
            });
        }
        check_s(self.s)?;
        if !(self.n_cut.is_finite() && self.n_cut > 0.0) {
            return Err(Error::OutOfRange {
                name: "N",
                value: self.n_cut,
                bound: "N > 0",
            });
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: self.epsilon,
                bound: "epsilon > 0",
            });
        }
        Ok(())
    }
}
