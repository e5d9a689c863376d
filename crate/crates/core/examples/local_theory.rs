//! Local theory on a small-L⁴ window: `‖∇Iu‖_{S⁰}` stays O(1) and the
//! `L⁶L^{9/2}` ratio is finite.

use nls_lab::diagnostics::default_pairs;
use nls_lab::lab::{lwp_check, InitialData};
use nls_lab::solver::SolverConfig;
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 64, 16.0)?;
    let cfg = SolverConfig::new(grid, 2e-3, 0.2).with_i_operator(4.0, 0.76).with_epsilon(0.5);
    for amplitude in [0.25, 0.5, 2.0] {
        let u0 = InitialData::Gaussian { amplitude, width: 1.0 }.build(grid)?;
        match lwp_check(&cfg, &u0, &default_pairs(2)) {
            Ok(r) => {
                println!("amplitude {amplitude}: L4 norm {:.4}", r.metrics["l4_norm"]);
                for p in &r.points {
                    println!("  estimate {}: lhs {:.4e} rhs {:.4e} ratio {:.4}", p.params["estimate"], p.lhs, p.rhs, p.ratio);
                }
            }
            Err(e) => println!("amplitude {amplitude}: {e}"),
        }
    }
    Ok(())
}
