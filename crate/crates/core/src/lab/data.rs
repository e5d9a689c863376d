use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::random::RandomFieldSpec;
use crate::diagnostics::sobolev_norm;
use crate::error::{Error, Result};
use crate::spectral::{Grid, SpectralField};

/// Initial data by description, so that runs can be reproduced from a config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    Zero,
    /// `A·exp(−|x − c|²/2w²)` centered in the box.
    Gaussian { amplitude: f64, width: f64 },
    PlaneWave { amplitude: f64, mode: Vec<i64> },
    /// Random field, optionally multiplied by a centered Gaussian envelope of
    /// width `envelope`.
    Random {
        field: RandomFieldSpec,
        #[serde(default)]
        envelope: Option<f64>,
    },
}

impl InitialData {
    pub fn build(&self, grid: Grid) -> Result<SpectralField> {
        let center = grid.box_length() / 2.0;
        let envelope = move |w: f64| {
            move |x: &[f64]| {
                let r2: f64 = x.iter().map(|xi| (xi - center).powi(2)).sum();
                (-r2 / (2.0 * w * w)).exp()
            }
        };
        match self {
            InitialData::Zero => Ok(SpectralField::zeros(grid, crate::spectral::Repr::Physical)),
            InitialData::Gaussian { amplitude, width } => {
                check_width(*width)?;
                let g = envelope(*width);
                Ok(SpectralField::from_fn(grid, |x| Complex64::new(amplitude * g(x), 0.0)))
            }
            InitialData::PlaneWave { amplitude, mode } => {
                if mode.len() != grid.dim() {
                    return Err(Error::Precondition(format!(
                        "mode has {} components for a {}-dimensional grid",
                        mode.len(),
                        grid.dim()
                    )));
                }
                Ok(SpectralField::plane_wave(grid, mode, Complex64::new(*amplitude, 0.0)))
            }
            InitialData::Random { field, envelope: w } => {
                let u = field.generate(grid, 0)?;
                match w {
                    None => Ok(u),
                    Some(w) => {
                        check_width(*w)?;
                        let g = envelope(*w);
                        u.pointwise_mul(&SpectralField::from_fn(grid, |x| Complex64::new(g(x), 0.0)))
                    }
                }
            }
        }
    }
}

fn check_width(w: f64) -> Result<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "width",
            value: w,
            bound: "width > 0",
        })
    }
}

/// Rescales `u` so that `‖∇u‖_{L²}` equals `target`; the zero field is
/// returned unchanged.
pub fn normalize_gradient(u: SpectralField, target: f64) -> SpectralField {
    let g = sobolev_norm(&u, 1.0, true);
    if g == 0.0 {
        return u;
    }
    u.scaled(Complex64::new(target / g, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptions_round_trip_through_json() {
        let d = InitialData::Random {
            field: RandomFieldSpec::sobolev_decay(0.76, 0.01, 1.0, 5),
            envelope: Some(1.5),
        };
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<InitialData>(&text).unwrap(), d);
    }

    #[test]
    fn gaussian_peak_and_plane_wave_check() {
        let grid = Grid::new(2, 16, 8.0).unwrap();
        let g = InitialData::Gaussian { amplitude: 0.5, width: 1.0 }.build(grid).unwrap();
        assert!((g.sup_norm() - 0.5).abs() < 1e-12);
        let bad = InitialData::PlaneWave { amplitude: 1.0, mode: vec![1] };
        assert!(bad.build(grid).is_err());
    }

    #[test]
    fn gradient_normalization() {
        let grid = Grid::new(2, 32, 8.0).unwrap();
        let u = InitialData::Gaussian { amplitude: 0.5, width: 1.0 }.build(grid).unwrap();
        let v = normalize_gradient(u, 0.25);
        assert!((sobolev_norm(&v, 1.0, true) - 0.25).abs() < 1e-12);
    }
}
