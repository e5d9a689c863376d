//! Energy increments and the interaction-Morawetz ratio over a time window.

use serde::{Deserialize, Serialize};

use super::functionals::{modified_energy, modified_kinetic_energy};
use super::window::{check_interval, window_integral};
use crate::error::{Error, Result};
use crate::solver::Trajectory;
use crate::spectral::SpectralField;

/// Indices of the snapshots lying in `[t1, t2]`.
fn snapshots_in(times: &[f64], interval: (f64, f64)) -> Result<Vec<usize>> {
    let (t1, t2) = check_interval(times, interval)?;
    let tol = 1e-12 * times.last().unwrap().abs().max(1.0);
    Ok((0..times.len())
        .filter(|&i| times[i] >= t1 - tol && times[i] <= t2 + tol)
        .collect())
}

/// `max − min` of `values` over the snapshots in `interval`.
pub fn series_increment(times: &[f64], values: &[f64], interval: (f64, f64)) -> Result<f64> {
    let idx = snapshots_in(times, interval)?;
    let (lo, hi) = idx.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
        (lo.min(values[i]), hi.max(values[i]))
    });
    Ok(if idx.is_empty() { 0.0 } else { hi - lo })
}

fn functional_increment(
    traj: &Trajectory,
    interval: (f64, f64),
    f: impl Fn(&SpectralField) -> f64,
) -> Result<f64> {
    let idx = snapshots_in(traj.times(), interval)?;
    let values: Vec<f64> = idx.iter().map(|&i| f(&traj.snapshots()[i])).collect();
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(if values.is_empty() { 0.0 } else { hi - lo })
}

/// `sup_{t, t' ∈ J} |E(Iu(t)) − E(Iu(t'))|` over the snapshots in `J`.
pub fn energy_increment(traj: &Trajectory, n_cut: f64, s: f64, interval: (f64, f64)) -> Result<f64> {
    let ch = traj.channels();
    if ch.n_cut == n_cut && ch.s == s {
        return series_increment(traj.times(), &ch.energy_iu, interval);
    }
    functional_increment(traj, interval, |u| modified_energy(u, n_cut, s))
}

/// Increment of the kinetic part `½‖∇Iu‖²` alone.
pub fn kinetic_increment(traj: &Trajectory, n_cut: f64, s: f64, interval: (f64, f64)) -> Result<f64> {
    functional_increment(traj, interval, |u| modified_kinetic_energy(u, n_cut, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorawetzRatio {
    /// `‖u‖⁴_{L⁴ₜₓ(J)}`.
    pub lhs: f64,
    /// `‖u‖²_{L^∞L²} ‖u‖²_{L^∞Ḣ^{1/2}}` over the snapshots in `J`.
    pub rhs: f64,
    pub ratio: f64,
}

pub fn morawetz_ratio(traj: &Trajectory, interval: (f64, f64)) -> Result<MorawetzRatio> {
    let ch = traj.channels();
    let h: Vec<f64> = ch.l4x.iter().map(|v| v.powi(4)).collect();
    let lhs = window_integral(traj.times(), &h, interval)?;
    let idx = snapshots_in(traj.times(), interval)?;
    let sup_mass = idx.iter().map(|&i| ch.mass[i]).fold(0.0, f64::max);
    let sup_half = idx.iter().map(|&i| ch.h_half[i]).fold(0.0, f64::max);
    let rhs = sup_mass * sup_half * sup_half;
    if !(rhs > 0.0) {
        return Err(Error::Degenerate(format!(
            "Morawetz right-hand side is {rhs} (lhs {lhs})"
        )));
    }
    Ok(MorawetzRatio {
        lhs,
        rhs,
        ratio: lhs / rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{evolve, SolverConfig};
    use crate::spectral::{Grid, Repr};
    use num_complex::Complex64;

    fn gaussian(grid: Grid, amp: f64) -> SpectralField {
        let c = grid.box_length() / 2.0;
        SpectralField::from_fn(grid, |x| {
            let r2: f64 = x.iter().map(|xi| (xi - c).powi(2)).sum();
            Complex64::new(amp * (-r2).exp(), 0.0)
        })
    }

    #[test]
    fn kinetic_part_is_conserved_by_free_flow() {
        let grid = Grid::new(2, 32, 12.0).unwrap();
        let cfg = SolverConfig::new(grid, 0.01, 0.5).with_stride(5).linear();
        let traj = evolve(&cfg, &gaussian(grid, 1.0)).unwrap();
        let inc = kinetic_increment(&traj, 2.0, 0.7, (0.0, 0.5)).unwrap();
        assert!(inc < 1e-10, "{inc}");
    }

    #[test]
    fn full_resolution_matches_true_energy() {
        let grid = Grid::new(2, 32, 12.0).unwrap();
        let cfg = SolverConfig::new(grid, 0.0005, 0.2).with_stride(40);
        let traj = evolve(&cfg, &gaussian(grid, 0.5)).unwrap();
        let n = grid.max_frequency();
        let a = energy_increment(&traj, n, 0.7, (0.0, 0.2)).unwrap();
        let b = series_increment(traj.times(), &traj.channels().energy, (0.0, 0.2)).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(a < 1e-8, "{a}");
    }

    #[test]
    fn increment_is_shift_invariant() {
        let times: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let periodic: Vec<f64> = times.iter().map(|t| ((t * 10.0).round() as i64 % 5) as f64).collect();
        let a = series_increment(&times, &periodic, (0.0, 0.9)).unwrap();
        let b = series_increment(&times, &periodic, (0.5, 1.4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_field_morawetz_is_degenerate() {
        let grid = Grid::new(1, 16, 4.0).unwrap();
        let cfg = SolverConfig::new(grid, 0.01, 0.1);
        let traj = evolve(&cfg, &SpectralField::zeros(grid, Repr::Physical)).unwrap();
        assert!(matches!(morawetz_ratio(&traj, (0.0, 0.1)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn morawetz_ratio_is_finite() {
        let grid = Grid::new(3, 16, 8.0).unwrap();
        let cfg = SolverConfig::new(grid, 0.01, 0.2).with_stride(4);
        let traj = evolve(&cfg, &gaussian(grid, 0.5)).unwrap();
        let m = morawetz_ratio(&traj, (0.0, 0.2)).unwrap();
        assert!(m.ratio.is_finite() && m.ratio > 0.0);
        assert!((m.ratio - m.lhs / m.rhs).abs() < 1e-15);
    }
}
