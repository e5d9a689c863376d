//! Greedy L⁴ partition of a run into small-norm intervals, grouped into a
//! coarser layer.

use nls_lab::diagnostics::double_layer_partition;
use nls_lab::lab::InitialData;
use nls_lab::solver::{evolve, SolverConfig};
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 64, 12.0)?;
    let u0 = InitialData::Gaussian { amplitude: 1.5, width: 1.0 }.build(grid)?;
    let traj = evolve(&SolverConfig::new(grid, 1e-3, 1.0).with_stride(5), &u0)?;
    let p = double_layer_partition(&traj, 0.4, 3)?;
    for ((a, b), n) in p.intervals().iter().zip(&p.l4_norms) {
        println!("[{a:.3}, {b:.3}]  L4 norm {n:.4}");
    }
    println!("{} little intervals, {} big", p.len(), p.big_intervals().map_or(0, |b| b.len()));
    println!("tiles: {}, within budget: {}, nested: {}", p.tiles((0.0, 1.0)), p.respects_budget(1e-9), p.is_nested());
    Ok(())
}
