use std::io::Write;

use serde::{Deserialize, Serialize};

use super::functionals::{energy, lq_norm, mass, modified_energy, sobolev_norm};
use crate::error::{Error, Result};
use crate::spectral::SpectralField;

pub const CSV_HEADER: &str = "t,mass,energy,energy_Iu,l4x,hs,h_half";

/// Per-snapshot scalar channels of a trajectory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticSeries {
    pub n_cut: f64,
    pub s: f64,
    pub times: Vec<f64>,
    pub mass: Vec<f64>,
    pub energy: Vec<f64>,
    /// `E(Iu)` with the trajectory's `(N, s)`.
    pub energy_iu: Vec<f64>,
    /// `‖u(t)‖_{L⁴ₓ}`.
    pub l4x: Vec<f64>,
    /// `‖u(t)‖_{H^s}`.
    pub hs: Vec<f64>,
    /// `‖u(t)‖_{Ḣ^{1/2}}`.
    pub h_half: Vec<f64>,
}

impl DiagnosticSeries {
    pub fn compute(times: &[f64], snapshots: &[SpectralField], n_cut: f64, s: f64) -> Self {
        let mut out = DiagnosticSeries {
            n_cut,
            s,
            times: times.to_vec(),
            mass: Vec::with_capacity(times.len()),
            energy: Vec::with_capacity(times.len()),
            energy_iu: Vec::with_capacity(times.len()),
            l4x: Vec::with_capacity(times.len()),
            hs: Vec::with_capacity(times.len()),
            h_half: Vec::with_capacity(times.len()),
        };
        for u in snapshots {
            out.mass.push(mass(u));
            out.energy.push(energy(u));
            out.energy_iu.push(modified_energy(u, n_cut, s));
            out.l4x.push(lq_norm(u, 4.0));
            out.hs.push(sobolev_norm(u, s, false));
            out.h_half.push(sobolev_norm(u, 0.5, true));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                self.times[i],
                self.mass[i],
                self.energy[i],
                self.energy_iu[i],
                self.l4x[i],
                self.hs[i],
                self.h_half[i]
            )?;
        }
        Ok(())
    }
}

/// Checks a diagnostics CSV against the declared schema: exact header, seven
/// numeric columns per row, nondecreasing time column.
pub fn validate_diagnostics_csv(text: &str) -> Result<usize> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::Schema(format!(
                "diagnostics header {other:?}, expected {CSV_HEADER:?}"
            )))
        }
    }
    let mut rows = 0;
    let mut last_t = f64::NEG_INFINITY;
    for (i, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 7 {
            return Err(Error::Schema(format!("row {i}: {} columns", cols.len())));
        }
        let vals = cols
            .iter()
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Schema(format!("row {i}: {e}")))?;
        if vals[0] < last_t {
            return Err(Error::Schema(format!("row {i}: time decreases")));
        }
        last_t = vals[0];
        rows += 1;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Grid, Repr};

    #[test]
    fn zero_field_csv_is_all_zeros() {
        let grid = Grid::new(1, 8, 1.0).unwrap();
        let z = SpectralField::zeros(grid, Repr::Physical);
        let series = DiagnosticSeries::compute(&[0.0, 0.5], &[z.clone(), z], 4.0, 0.75);
        let mut buf = Vec::new();
        series.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,mass,energy,energy_Iu,l4x,hs,h_half\n0,0,0,0,0,0,0\n0.5,0,0,0,0,0,0\n");
        assert_eq!(validate_diagnostics_csv(&text).unwrap(), 2);
    }

    #[test]
    fn schema_rejects_malformed() {
        assert!(validate_diagnostics_csv("t,mass\n").is_err());
        assert!(validate_diagnostics_csv(&format!("{CSV_HEADER}\n1,2,3\n")).is_err());
        assert!(validate_diagnostics_csv(&format!("{CSV_HEADER}\n1,0,0,0,0,0,0\n0,0,0,0,0,0,0\n")).is_err());
        assert!(validate_diagnostics_csv(&format!("{CSV_HEADER}\n1,x,0,0,0,0,0\n")).is_err());
    }
}
