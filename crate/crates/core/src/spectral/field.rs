use num_complex::Complex64;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use super::{fft, Grid};
use crate::error::{Error, Result};

/// Which basis the values of a [`SpectralField`] are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Repr {
    Physical,
    Frequency,
}

/// Complex lattice function, stored either as point values or as unitary
/// Fourier coefficients.
///
/// With the unitary normalization `Σ|u_j|² = Σ|û_k|²`, so every L² quantity
/// is `cell_volume · Σ|·|²` in either representation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    values: Vec<Complex64>,
    repr: Repr,
}

impl SpectralField {
    pub fn zeros(grid: Grid, repr: Repr) -> Self {
        SpectralField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            repr,
        }
    }

    pub fn from_values(grid: Grid, values: Vec<Complex64>, repr: Repr) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Precondition(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(SpectralField { grid, values, repr })
    }

    /// Samples `f(x)` at every lattice point.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| f(&grid.position(i)[..grid.dim()]))
            .collect();
        SpectralField {
            grid,
            values,
            repr: Repr::Physical,
        }
    }

    /// `amplitude · e^{iξ·x}` with `ξ = (2π/L)k`, in physical representation.
    pub fn plane_wave(grid: Grid, k: &[i64], amplitude: Complex64) -> Self {
        let unit = grid.k_unit();
        let xi: Vec<f64> = k.iter().map(|&ki| unit * ki as f64).collect();
        Self::from_fn(grid, |x| {
            let phase: f64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
            amplitude * Complex64::from_polar(1.0, phase)
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Forward transform. The field must be in physical representation.
    pub fn to_frequency(mut self) -> Result<Self> {
        if self.repr != Repr::Physical {
            return Err(Error::WrongRepr {
                expected: Repr::Physical,
                found: self.repr,
            });
        }
        fft::transform(&self.grid, &mut self.values, FftDirection::Forward);
        self.repr = Repr::Frequency;
        Ok(self)
    }

    /// Inverse transform. The field must be in frequency representation.
    pub fn to_physical(mut self) -> Result<Self> {
        if self.repr != Repr::Frequency {
            return Err(Error::WrongRepr {
                expected: Repr::Frequency,
                found: self.repr,
            });
        }
        fft::transform(&self.grid, &mut self.values, FftDirection::Inverse);
        self.repr = Repr::Physical;
        Ok(self)
    }

    /// Converts to `repr`, doing nothing if already there.
    pub fn into_repr(mut self, repr: Repr) -> Self {
        if self.repr != repr {
            let direction = match repr {
                Repr::Frequency => FftDirection::Forward,
                Repr::Physical => FftDirection::Inverse,
            };
            fft::transform(&self.grid, &mut self.values, direction);
            self.repr = repr;
        }
        self
    }

    /// A copy in `repr`.
    pub fn in_repr(&self, repr: Repr) -> Self {
        self.clone().into_repr(repr)
    }

    pub fn into_frequency(self) -> Self {
        self.into_repr(Repr::Frequency)
    }

    pub fn into_physical(self) -> Self {
        self.into_repr(Repr::Physical)
    }

    /// `Σ|v|²` times the cell volume; the squared L² norm in either representation.
    pub fn norm_sqr(&self) -> f64 {
        self.grid.cell_volume() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest pointwise modulus in physical space.
    pub fn sup_norm(&self) -> f64 {
        let phys;
        let vals = if self.repr == Repr::Physical {
            &self.values
        } else {
            phys = self.in_repr(Repr::Physical);
            &phys.values
        };
        vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        for v in &mut self.values {
            *v *= c;
        }
        self
    }

    fn zip_with(
        &self,
        other: &SpectralField,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let converted;
        let rhs = if other.repr == self.repr {
            other
        } else {
            converted = other.in_repr(self.repr);
            &converted
        };
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| op(*a, *b))
            .collect();
        Ok(SpectralField {
            grid: self.grid,
            values,
            repr: self.repr,
        })
    }

    /// `self + other`, returned in `self`'s representation.
    pub fn add(&self, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    /// `self - other`, returned in `self`'s representation.
    pub fn sub(&self, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product in physical space.
    pub fn pointwise_mul(&self, other: &SpectralField) -> Result<Self> {
        let a = self.in_repr(Repr::Physical);
        let b = other.in_repr(Repr::Physical);
        a.zip_with(&b, |x, y| x * y)
    }

    /// `|u|²u` evaluated pointwise, in physical representation.
    pub fn cubic(&self) -> Self {
        let mut out = self.in_repr(Repr::Physical);
        for v in &mut out.values {
            *v *= v.norm_sqr();
        }
        out
    }

    /// L² distance to `other`, `‖self − other‖`.
    pub fn distance(&self, other: &SpectralField) -> Result<f64> {
        Ok(self.sub(other)?.l2_norm())
    }

    /// Trigonometric interpolation onto a grid with `factor` times as many
    /// points per axis. The result agrees with `self` on the coarse points.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let fine = self.grid.refined(factor)?;
        let coarse = self.in_repr(Repr::Frequency);
        let scale = (fine.len() as f64 / self.grid.len() as f64).sqrt();
        let mut out = SpectralField::zeros(fine, Repr::Frequency);
        let dim = self.grid.dim();
        for (flat, v) in coarse.values.iter().enumerate() {
            let idx = self.grid.unflatten(flat);
            let k: Vec<i64> = idx[..dim].iter().map(|&j| self.grid.wavenumber(j)).collect();
            out.values[fine.mode_index(&k)] = v * scale;
        }
        Ok(out.into_repr(self.repr))
    }
}
