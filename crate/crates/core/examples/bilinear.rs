//! Bilinear refinement: `‖uv‖_{L²ₜₓ}` for a slow wave at frequency `N` and a
//! fast wave at `M ≫ N`, fitted against `M`. Run with `--release`.

use nls_lab::lab::{bilinear_experiment, BilinearSetup};

fn main() -> nls_lab::Result<()> {
    let setup = BilinearSetup { seed: 5, ..BilinearSetup::default() };
    let report = bilinear_experiment(&setup)?;
    for p in &report.points {
        println!("M = {:>4}: |uv| / (|u0||v0|) = {:.4e}", p.params["M"], p.ratio);
    }
    let fit = report.fit.expect("sweep has four points");
    println!("fitted M-exponent {:.4} +- {:.4}, pass = {}", fit.exponent, fit.stderr, report.pass);
    Ok(())
}
