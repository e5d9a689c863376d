//! Exact sub-flows and Strang split-step integration.

use num_complex::Complex64;

use super::{SolverConfig, Trajectory, DIVERGENCE_FACTOR, PHASE_ROTATION_CAP};
use crate::error::{Error, Result};
use crate::spectral::{Grid, Repr, SpectralField};

/// Phase factors `e^{-it|ξ|²}` for every mode.
pub(crate) fn propagator(grid: &Grid, t: f64) -> Vec<Complex64> {
    grid.xi_squared()
        .into_iter()
        .map(|x2| Complex64::from_polar(1.0, -t * x2))
        .collect()
}

fn multiply(values: &mut [Complex64], factors: &[Complex64]) {
    for (v, f) in values.iter_mut().zip(factors) {
        *v *= f;
    }
}

/// `e^{itΔ} f`, exact on every lattice mode. Returned in `f`'s representation.
pub fn free_evolve(f: &SpectralField, t: f64) -> SpectralField {
    let caller = f.repr();
    let mut out = f.in_repr(Repr::Frequency);
    let phases = propagator(f.grid(), t);
    multiply(out.values_mut(), &phases);
    out.into_repr(caller)
}

/// Exact flow of `i u_t = |u|²u` over `dt`: `u ← u·e^{-i dt |u|²}`.
pub fn nonlinear_phase_step(f: &SpectralField, dt: f64) -> Result<SpectralField> {
    if f.repr() != Repr::Physical {
        return Err(Error::WrongRepr {
            expected: Repr::Physical,
            found: f.repr(),
        });
    }
    let mut out = f.clone();
    apply_phase(out.values_mut(), dt);
    Ok(out)
}

fn apply_phase(values: &mut [Complex64], dt: f64) {
    for v in values {
        *v *= Complex64::from_polar(1.0, -dt * v.norm_sqr());
    }
}

/// One Strang step: half free flow, full nonlinear phase, half free flow.
/// With the nonlinearity off this is exactly `free_evolve(f, dt)`.
pub fn strang_step(f: &SpectralField, dt: f64, nonlinear: bool) -> SpectralField {
    if !nonlinear {
        return free_evolve(f, dt);
    }
    let caller = f.repr();
    let half = propagator(f.grid(), 0.5 * dt);
    let mut u = f.in_repr(Repr::Frequency);
    multiply(u.values_mut(), &half);
    let mut u = u.into_physical();
    apply_phase(u.values_mut(), dt);
    let mut u = u.into_frequency();
    multiply(u.values_mut(), &half);
    u.into_repr(caller)
}

/// Largest nonlinear phase rotation `dt · max|u|²` a step would apply.
pub fn phase_rotation(u: &SpectralField, dt: f64) -> f64 {
    let sup = u.sup_norm();
    dt * sup * sup
}

/// Integrates the initial value problem with Strang splitting.
///
/// Snapshots are taken at `t = 0`, every `snapshot_stride` steps, and at
/// `t_end`. Fails with [`Error::StepTooLarge`] when `dt·max|u₀|²` exceeds
/// [`PHASE_ROTATION_CAP`], and with [`Error::Divergence`] when the sup norm
/// grows beyond [`DIVERGENCE_FACTOR`] times its initial value.
pub fn evolve(config: &SolverConfig, u0: &SpectralField) -> Result<Trajectory> {
    config.validate()?;
    if *u0.grid() != config.grid {
        return Err(Error::GridMismatch);
    }
    let n_steps = config.n_steps();
    let dt = config.effective_dt();
    let sup0 = u0.sup_norm();
    if config.nonlinearity_on {
        let rotation = dt * sup0 * sup0;
        if rotation > PHASE_ROTATION_CAP {
            return Err(Error::StepTooLarge {
                dt,
                rotation,
                cap: PHASE_ROTATION_CAP,
            });
        }
    }
    let guard = DIVERGENCE_FACTOR * sup0;

    let grid = config.grid;
    let half = propagator(&grid, 0.5 * dt);
    let full = propagator(&grid, dt);

    let mut times = vec![0.0];
    let mut snaps = vec![u0.in_repr(Repr::Physical)];
    let mut state = u0.in_repr(Repr::Frequency);

    for step in 1..=n_steps {
        if config.nonlinearity_on {
            multiply(state.values_mut(), &half);
            let mut phys = state.into_physical();
            apply_phase(phys.values_mut(), dt);
            let sup = phys.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
            if !sup.is_finite() || (sup0 > 0.0 && sup > guard) {
                return Err(Error::Divergence {
                    time: step as f64 * dt,
                    growth: sup / sup0,
                });
            }
            state = phys.into_frequency();
            multiply(state.values_mut(), &half);
        } else {
            multiply(state.values_mut(), &full);
        }
        if step % config.snapshot_stride == 0 || step == n_steps {
            times.push(step as f64 * dt);
            snaps.push(state.in_repr(Repr::Physical));
        }
    }
    Trajectory::new(config.clone(), times, snaps)
}

/// Free evolution of `u0` sampled at `times` (which must start at 0).
pub fn linear_trajectory(config: &SolverConfig, u0: &SpectralField, times: &[f64]) -> Result<Trajectory> {
    let snaps = times.iter().map(|&t| free_evolve(u0, t)).collect();
    let mut cfg = config.clone();
    cfg.nonlinearity_on = false;
    Trajectory::new(cfg, times.to_vec(), snaps)
}
