//! Fourier multipliers: the smooth cutoff, the I-operator symbol and a
//! Littlewood-Paley decomposition that sums back to the field.

use nls_lab::diagnostics::sobolev_norm;
use nls_lab::lab::RandomFieldSpec;
use nls_lab::spectral::{apply_multiplier, cutoff_phi, symbol_m, Grid, MultiplierSpec, M_DEFINITION, PHI_DEFINITION};

fn main() -> nls_lab::Result<()> {
    println!("{PHI_DEFINITION}\n{M_DEFINITION}\n");
    let (n, s) = (4.0, 0.76);
    println!("{:>6} {:>8} {:>10}", "|xi|", "phi", "m_N");
    for xi in [0.0, 2.0, 4.0, 5.0, 6.0, 8.0, 16.0, 64.0] {
        println!("{xi:>6} {:>8.4} {:>10.6}", cutoff_phi(xi / n), symbol_m(xi, n, s));
    }

    let grid = Grid::new(2, 64, 2.0 * std::f64::consts::PI)?;
    let u = RandomFieldSpec::sobolev_decay(s, 0.01, 1.0, 1).generate(grid, 0)?;
    let mut sum = apply_multiplier(&u, &MultiplierSpec::CutoffLow { n: 1.0 });
    let mut block = 1.0;
    while block <= grid.max_frequency() {
        sum = sum.add(&apply_multiplier(&u, &MultiplierSpec::LpBlock { n: block }))?;
        block *= 2.0;
    }
    println!("\nLittlewood-Paley resummation error: {:.2e}", sum.distance(&u)? / u.l2_norm());

    let iu = apply_multiplier(&u, &MultiplierSpec::IOperator { n, s });
    println!("|u|_H^s = {:.4}, |Iu|_H^1 = {:.4}", sobolev_norm(&u, s, false), sobolev_norm(&iu, 1.0, false));
    Ok(())
}
