//! Fixed-point iteration of the Duhamel map
//!
//! `u(t) = e^{itΔ}u₀ − i ∫₀ᵗ e^{i(t−τ)Δ} |u|²u(τ) dτ`
//!
//! on a uniform time grid, with the τ-integral done by the composite
//! trapezoid rule in the interaction picture `e^{-iτΔ}|u|²u(τ)`.

use num_complex::Complex64;

use super::flow::propagator;
use super::{SolverConfig, Trajectory};
use crate::error::{Error, Result};
use crate::spectral::{Repr, SpectralField};

#[derive(Clone, Debug)]
pub struct PicardSolution {
    pub trajectory: Trajectory,
    /// `max_j ‖u^{k}(t_j) − u^{k−1}(t_j)‖_{L²}` for each iteration `k`.
    pub distances: Vec<f64>,
}

impl PicardSolution {
    pub fn iterations(&self) -> usize {
        self.distances.len()
    }
}

/// Solves the Duhamel equation on `[0, t_end]` with `n_steps` quadrature intervals.
///
/// Iterates from the free evolution until the L^∞_t L²_x distance between
/// successive iterates drops below `tol`. Returns
/// [`Error::NonContraction`] when that distance grows three iterations in a
/// row (or stops being finite) and [`Error::MaxIterExceeded`] otherwise.
pub fn picard_solve(
    u0: &SpectralField,
    t_end: f64,
    n_steps: usize,
    max_iter: usize,
    tol: f64,
) -> Result<PicardSolution> {
    if n_steps == 0 || !(t_end > 0.0) {
        return Err(Error::Precondition("picard_solve needs t_end > 0 and n_steps >= 1".into()));
    }
    let grid = *u0.grid();
    let h = t_end / n_steps as f64;
    let times: Vec<f64> = (0..=n_steps).map(|j| j as f64 * h).collect();
    let u0_hat = u0.in_repr(Repr::Frequency);
    let forward: Vec<Vec<Complex64>> = times.iter().map(|&t| propagator(&grid, t)).collect();

    let free: Vec<SpectralField> = forward
        .iter()
        .map(|phase| {
            let mut f = u0_hat.clone();
            for (v, p) in f.values_mut().iter_mut().zip(phase) {
                *v *= p;
            }
            f
        })
        .collect();

    let mut current = free.clone();
    let mut distances = Vec::new();
    let mut growth_streak = 0;
    let mut converged = false;

    for _ in 0..max_iter {
        // Pulled-back nonlinearity w_j = e^{-i t_j Δ}(|u|²u)(t_j) in frequency space.
        let pulled: Vec<Vec<Complex64>> = current
            .iter()
            .zip(&forward)
            .map(|(u, phase)| {
                let cubic = u.cubic().into_frequency();
                cubic
                    .values()
                    .iter()
                    .zip(phase)
                    .map(|(c, p)| c * p.conj())
                    .collect()
            })
            .collect();

        let mut integral = vec![Complex64::new(0.0, 0.0); grid.len()];
        let mut next = Vec::with_capacity(times.len());
        let mut distance: f64 = 0.0;
        for (j, phase) in forward.iter().enumerate() {
            if j > 0 {
                for ((acc, a), b) in integral.iter_mut().zip(&pulled[j - 1]).zip(&pulled[j]) {
                    *acc += 0.5 * h * (a + b);
                }
            }
            let values: Vec<Complex64> = u0_hat
                .values()
                .iter()
                .zip(&integral)
                .zip(phase)
                .map(|((u, i), p)| (u - Complex64::i() * i) * p)
                .collect();
            let field = SpectralField::from_values(grid, values, Repr::Frequency)?;
            distance = distance.max(field.distance(&current[j])?);
            next.push(field);
        }
        current = next;

        if !distance.is_finite() {
            distances.push(distance);
            return Err(Error::NonContraction { distances });
        }
        if let Some(&prev) = distances.last() {
            if distance > prev {
                growth_streak += 1;
            } else {
                growth_streak = 0;
            }
        }
        distances.push(distance);
        if distance < tol {
            converged = true;
            break;
        }
        if growth_streak >= 3 {
            return Err(Error::NonContraction { distances });
        }
    }
    if !converged {
        return Err(Error::MaxIterExceeded {
            max_iter,
            last: distances.last().copied().unwrap_or(f64::NAN),
        });
    }

    let config = SolverConfig::new(grid, h, t_end);
    let trajectory = Trajectory::new(config, times, current)?;
    Ok(PicardSolution {
        trajectory,
        distances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    fn bump(grid: Grid, amp: f64) -> SpectralField {
        let c = grid.box_length() / 2.0;
        SpectralField::from_fn(grid, |x| {
            let r2: f64 = x.iter().map(|xi| (xi - c).powi(2)).sum();
            Complex64::new(amp * (-r2).exp(), 0.0)
        })
    }

    #[test]
    fn zero_data_converges_immediately() {
        let grid = Grid::new(1, 32, 8.0).unwrap();
        let z = SpectralField::zeros(grid, Repr::Physical);
        let sol = picard_solve(&z, 0.5, 20, 10, 1e-12).unwrap();
        assert_eq!(sol.iterations(), 1);
        assert_eq!(sol.distances[0], 0.0);
    }

    #[test]
    fn small_data_contracts_geometrically() {
        let grid = Grid::new(1, 64, 16.0).unwrap();
        let sol = picard_solve(&bump(grid, 0.5), 0.5, 100, 30, 1e-13).unwrap();
        let d = &sol.distances;
        assert!(d.len() >= 4, "{d:?}");
        for k in 2..d.len() {
            if d[k - 1] > 1e-14 {
                assert!(d[k] / d[k - 1] < 0.5, "ratio at {k}: {d:?}");
            }
        }
    }

    #[test]
    fn large_data_fails_to_contract() {
        let grid = Grid::new(1, 64, 16.0).unwrap();
        let err = picard_solve(&bump(grid, 50.0), 0.5, 100, 50, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NonContraction { .. }), "{err}");
    }

    #[test]
    fn iteration_budget_is_reported() {
        let grid = Grid::new(1, 64, 16.0).unwrap();
        let err = picard_solve(&bump(grid, 0.5), 0.5, 100, 2, 1e-14).unwrap_err();
        assert!(matches!(err, Error::MaxIterExceeded { max_iter: 2, .. }));
    }
}
