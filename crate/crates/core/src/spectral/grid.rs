use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Periodic lattice on the torus `[0, L)^dim` with `n` points per axis.
///
/// Wave vectors are `ξ = (2π/L)·k` with integer `k ∈ [-n/2, n/2)` per axis.
/// Flat indices are row-major, axis 0 slowest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct Grid {
    dim: usize,
    n: usize,
    box_length: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    dim: usize,
    n: usize,
    box_length: f64,
}

impl TryFrom<RawGrid> for Grid {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        Grid::new(raw.dim, raw.n, raw.box_length)
    }
}

impl From<Grid> for RawGrid {
    fn from(g: Grid) -> Self {
        RawGrid {
            dim: g.dim,
            n: g.n,
            box_length: g.box_length,
        }
    }
}

impl Grid {
    pub fn new(dim: usize, n: usize, box_length: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dim must be 1, 2 or 3, got {dim}")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 8, got {n}"
            )));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "box length must be positive, got {box_length}"
            )));
        }
        Ok(Grid { dim, n, box_length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    /// Total number of lattice points, `n^dim`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn volume(&self) -> f64 {
        self.box_length.powi(self.dim as i32)
    }

    /// Lattice spacing in frequency, `2π/L`.
    pub fn k_unit(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Per-axis Nyquist frequency `(2π/L)(n/2)`.
    pub fn nyquist(&self) -> f64 {
        self.k_unit() * (self.n / 2) as f64
    }

    /// Largest `|ξ|` present on the lattice (the corner mode), `√dim · nyquist`.
    ///
    /// Radial multipliers are identically 1 on the grid only when their
    /// transition starts above this value.
    pub fn max_frequency(&self) -> f64 {
        self.nyquist() * (self.dim as f64).sqrt()
    }

    /// Integer wave number for a storage index along one axis.
    pub fn wavenumber(&self, j: usize) -> i64 {
        let half = self.n / 2;
        if j < half {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Storage index along one axis for an integer wave number.
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Flat index of the lattice point (or mode) with the given per-axis indices.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dim);
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    /// Per-axis indices of a flat index.
    pub fn unflatten(&self, mut flat: usize) -> [usize; 3] {
        let mut out = [0usize; 3];
        for axis in (0..self.dim).rev() {
            out[axis] = flat % self.n;
            flat /= self.n;
        }
        out
    }

    /// Flat index of the mode with integer wave vector `k`.
    pub fn mode_index(&self, k: &[i64]) -> usize {
        debug_assert_eq!(k.len(), self.dim);
        k.iter().fold(0, |acc, &ki| acc * self.n + self.index_of(ki))
    }

    /// Wave vector `ξ` of the mode stored at `flat`.
    pub fn wave_vector(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut xi = [0.0; 3];
        for axis in 0..self.dim {
            xi[axis] = self.k_unit() * self.wavenumber(idx[axis]) as f64;
        }
        xi
    }

    /// Physical coordinates of the lattice point stored at `flat`.
    pub fn position(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = idx[axis] as f64 * h;
        }
        x
    }

    /// `|ξ|²` for every mode, in storage order.
    pub fn xi_squared(&self) -> Vec<f64> {
        let axis: Vec<f64> = (0..self.n)
            .map(|j| {
                let k = self.k_unit() * self.wavenumber(j) as f64;
                k * k
            })
            .collect();
        let mut out = Vec::with_capacity(self.len());
        match self.dim {
            1 => out.extend_from_slice(&axis),
            2 => {
                for a in &axis {
                    out.extend(axis.iter().map(|b| a + b));
                }
            }
            _ => {
                for a in &axis {
                    for b in &axis {
                        out.extend(axis.iter().map(|c| a + b + c));
                    }
                }
            }
        }
        out
    }

    /// Same lattice on a box scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Grid> {
        Grid::new(self.dim, self.n, self.box_length * factor)
    }

    /// Same box with `factor` times as many points per axis.
    pub fn refined(&self, factor: usize) -> Result<Grid> {
        Grid::new(self.dim, self.n * factor, self.box_length)
    }
}
