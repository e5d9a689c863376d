//! Frequency-localized bounds on the cubic term over a run.

use nls_lab::diagnostics::default_pairs;
use nls_lab::lab::{nonlinear_band_check, InitialData};
use nls_lab::solver::{evolve, SolverConfig};
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 64, 16.0)?;
    let u0 = InitialData::Gaussian { amplitude: 0.6, width: 1.0 }.build(grid)?;
    let traj = evolve(&SolverConfig::new(grid, 2e-3, 0.3).with_stride(5).with_i_operator(4.0, 0.76), &u0)?;
    let report = nonlinear_band_check(&traj, &[1.0, 2.0, 4.0, 8.0, 16.0], &default_pairs(2))?;
    for p in &report.points {
        println!("estimate {} M = {:>4}: lhs {:.4e} ratio {:.4e}", p.params["estimate"], p.params["M"], p.lhs, p.ratio);
    }
    Ok(())
}
