//! Smoothing of the nonlinear part: `‖P_{>N}∇Iuⁿˡ‖_{S⁰}` decays in `N` for
//! localized rough data. Run with `--release`.

use nls_lab::diagnostics::default_pairs;
use nls_lab::lab::{normalize_gradient, smoothing_sweep, InitialData, RandomFieldSpec};
use nls_lab::solver::SolverConfig;
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 128, 20.0)?;
    let data = InitialData::Random {
        field: RandomFieldSpec::sobolev_decay(0.76, 0.01, 1.0, 1),
        envelope: Some(1.5),
    };
    let u0 = normalize_gradient(data.build(grid)?, 0.5);
    let cfg = SolverConfig::new(grid, 1e-3, 0.3).with_stride(10).with_epsilon(1.0);
    let report = smoothing_sweep(&cfg, &u0, &[2.0, 4.0, 8.0, 16.0], &default_pairs(2))?;
    for p in &report.points {
        println!("N = {:>3}: lhs {:.4e}  rhs {:.4e}", p.params["N"], p.lhs, p.rhs);
    }
    println!("fitted N-exponent {:.3}", report.fit.map_or(f64::NAN, |f| f.exponent));
    println!("linear-part exponent {:.3}", report.metrics["linear_exponent"]);
    Ok(())
}
