//! Interaction-Morawetz ratio of a 3D run and its stability under grid
//! refinement.

use nls_lab::lab::{morawetz_refinement, InitialData};
use nls_lab::solver::SolverConfig;
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(3, 16, 12.0)?;
    let u0 = InitialData::Gaussian { amplitude: 1.0, width: 1.0 }.build(grid)?;
    let r = morawetz_refinement(&SolverConfig::new(grid, 5e-3, 1.0).with_stride(2), &u0)?;
    println!("n = 16: lhs {:.5e} rhs {:.5e} ratio {:.5e}", r.coarse.lhs, r.coarse.rhs, r.coarse.ratio);
    println!("n = 32: lhs {:.5e} rhs {:.5e} ratio {:.5e}", r.fine.lhs, r.fine.rhs, r.fine.ratio);
    println!("relative change {:.3e}, stable = {}", r.relative_change, r.stable());
    Ok(())
}
