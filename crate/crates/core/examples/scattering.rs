//! Scattering state of a small Gaussian on a large box, computed by
//! quadrature and by pulling back the final state.

use nls_lab::lab::{scattering_profile, InitialData};
use nls_lab::solver::{evolve, SolverConfig};
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 128, 40.0)?;
    let u0 = InitialData::Gaussian { amplitude: 0.5, width: 1.5 }.build(grid)?;
    let traj = evolve(&SolverConfig::new(grid, 2e-3, 2.0).with_stride(5), &u0)?;
    let profile = scattering_profile(&traj, 1.0, 0.8)?;
    println!("route gap |u+ quad - u+ pullback| / |u+| = {:.3e}", profile.route_gap);
    println!("same gap relative to the nonlinear contribution = {:.3e}", profile.nonlinear_gap);
    for (t, r) in profile.residual_times.iter().zip(&profile.residuals).step_by(20) {
        println!("t = {t:.2}: residual {r:.4e}");
    }
    Ok(())
}
