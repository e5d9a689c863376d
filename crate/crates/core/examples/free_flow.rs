//! Exact free evolution: a single Fourier mode picks up the phase
//! `e^{-it|ξ|²}` and nothing else.

use std::f64::consts::PI;

use nls_lab::solver::free_evolve;
use nls_lab::spectral::{Grid, SpectralField};
use num_complex::Complex64;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(2, 32, 2.0 * PI)?;
    let k = [3, -2];
    let u0 = SpectralField::plane_wave(grid, &k, Complex64::new(1.0, 0.0));
    let t = 1.0;
    let xi2 = (k[0] * k[0] + k[1] * k[1]) as f64;
    let exact = u0.clone().scaled(Complex64::from_polar(1.0, -t * xi2));
    let u = free_evolve(&u0, t);
    println!("|xi|^2 = {xi2}, phase error after t = {t}: {:.3e}", u.distance(&exact)? / u0.l2_norm());
    println!("mass before {:.15}, after {:.15}", u0.norm_sqr(), u.norm_sqr());
    Ok(())
}
