//! Empirical constants of `‖∇Iu‖ ≲ N^{1−s}‖u‖_{H^s}` on 100 rough random
//! fields, per dyadic `N`.

use nls_lab::lab::verify_i_operator_bounds;
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 64, 2.0 * std::f64::consts::PI)?;
    let report = verify_i_operator_bounds(grid, &[2.0, 4.0, 8.0, 16.0], 0.76, 100, 7)?;
    for p in &report.points {
        println!("N = {:>4}: max ratio {:.4}", p.params["N"], p.ratio);
    }
    for (k, v) in &report.metrics {
        println!("{k:>28} = {v:.4e}");
    }
    println!("pass: {}", report.pass);
    Ok(())
}
