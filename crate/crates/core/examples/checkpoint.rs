//! Saving a state, reading it back, and the exact scaling symmetry.

use std::io::Cursor;

use nls_lab::diagnostics::{energy, mass};
use nls_lab::lab::InitialData;
use nls_lab::solver::{read_checkpoint, rescale, write_checkpoint};
use nls_lab::spectral::Grid;

fn main() -> nls_lab::Result<()> {
    let grid = Grid::new(3, 16, 8.0)?;
    let u = InitialData::Gaussian { amplitude: 0.7, width: 1.0 }.build(grid)?;
    let mut buf = Vec::new();
    write_checkpoint(&mut buf, &u, 0.25)?;
    let (back, t) = read_checkpoint(Cursor::new(&buf))?;
    println!("{} bytes, t = {t}, identical: {}", buf.len(), back == u);

    let v = rescale(&u, 2.0)?;
    println!("grid {} -> box {}", grid.box_length(), v.grid().box_length());
    println!("mass {:.6} -> {:.6} (x lambda)", mass(&u), mass(&v));
    println!("energy {:.6} -> {:.6} (/ lambda)", energy(&u), energy(&v));
    Ok(())
}
