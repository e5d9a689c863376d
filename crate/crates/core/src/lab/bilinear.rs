//! Bilinear space-time bound for free waves at separated frequencies.
//!
//! The data are tensor products `f(x)g(y)` of one-dimensional Gaussian
//! packets with compact spectral support, so the free evolution factors and
//! `‖uv‖²_{L²ₜₓ} = ∫ ‖F_u F_v(t)‖²_{L²_x} ‖G_u G_v(t)‖²_{L²_y} dt` only needs
//! one-dimensional transforms. That makes boxes long enough for the fast packet
//! to cross the slow one without wrapping around affordable.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use super::report::{Band, EstimateReport, SweepPoint};
use crate::error::{Error, Result};
use crate::solver::free_evolve;
use crate::spectral::{transform_line, Grid, Repr, SpectralField};

/// Gaussian packet `exp(−(ξ−carrier)²/2σ²)` truncated to `|ξ − carrier| ≤ 3σ`,
/// centered at `center` in physical space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Packet {
    pub carrier: f64,
    pub sigma: f64,
    pub center: f64,
}

impl Packet {
    pub fn spectral_radius(&self) -> f64 {
        self.carrier.abs() + 3.0 * self.sigma
    }

    /// Unitary Fourier coefficients on a one-dimensional grid.
    pub fn coefficients(&self, grid: &Grid) -> Vec<Complex64> {
        let dk = grid.k_unit();
        (0..grid.n())
            .map(|j| {
                let xi = dk * grid.wavenumber(j) as f64;
                let d = xi - self.carrier;
                if d.abs() > 3.0 * self.sigma {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::from_polar((-d * d / (2.0 * self.sigma * self.sigma)).exp(), -xi * self.center)
                }
            })
            .collect()
    }
}

/// Nonzero coefficients of a line packet with their `ξ²`.
struct SparseLine {
    n: usize,
    modes: Vec<(usize, Complex64, f64)>,
}

impl SparseLine {
    fn new(grid: &Grid, coeffs: &[Complex64]) -> Self {
        let dk = grid.k_unit();
        let modes = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(j, &c)| (j, c, (dk * grid.wavenumber(j) as f64).powi(2)))
            .collect();
        SparseLine { n: coeffs.len(), modes }
    }

    /// Point values of `e^{it∂²} f`.
    fn evolve(&self, t: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for &(j, c, xi2) in &self.modes {
            out[j] = c * Complex64::from_polar(1.0, -t * xi2);
        }
        transform_line(&mut out, FftDirection::Inverse);
        out
    }
}

fn product_norm_sqr(a: &[Complex64], b: &[Complex64], dx: f64) -> f64 {
    dx * a.iter().zip(b).map(|(x, y)| x.norm_sqr() * y.norm_sqr()).sum::<f64>()
}

fn trapezoid(h: &[f64], dt: f64) -> f64 {
    let n = h.len();
    dt * (h.iter().sum::<f64>() - 0.5 * (h[0] + h[n - 1]))
}

/// Tensor-product data `u₀ = f_x ⊗ f_y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparableData {
    pub x: Packet,
    pub y: Packet,
}

impl SeparableData {
    /// The same data as a field on a square two-dimensional grid.
    pub fn to_field(&self, line: &Grid) -> Result<SpectralField> {
        let grid = Grid::new(2, line.n(), line.box_length())?;
        let fx = self.x.coefficients(line);
        let fy = self.y.coefficients(line);
        let values = fx.iter().flat_map(|a| fy.iter().map(move |b| a * b)).collect();
        SpectralField::from_values(grid, values, Repr::Frequency)
    }
}

/// `(‖uv‖_{L²([0,T]×box)}, ‖u₀‖_{L²}‖v₀‖_{L²})` via the factorized route.
pub fn separable_bilinear(
    line: &Grid,
    u: &SeparableData,
    v: &SeparableData,
    t_end: f64,
    samples: usize,
) -> (f64, f64) {
    separable_bilinear_sweep(line, u, std::slice::from_ref(v), t_end, samples)[0]
}

/// [`separable_bilinear`] for one slow wave against several fast ones,
/// evolving the shared factors once per time sample.
pub fn separable_bilinear_sweep(
    line: &Grid,
    u: &SeparableData,
    vs: &[SeparableData],
    t_end: f64,
    samples: usize,
) -> Vec<(f64, f64)> {
    let dx = line.spacing();
    let dt = t_end / samples as f64;
    let sparse = |p: &Packet| SparseLine::new(line, &p.coefficients(line));
    let (ux, uy) = (sparse(&u.x), sparse(&u.y));
    let vx: Vec<SparseLine> = vs.iter().map(|v| sparse(&v.x)).collect();
    let mut y_packets: Vec<Packet> = Vec::new();
    let mut y_slot = Vec::with_capacity(vs.len());
    for v in vs {
        match y_packets.iter().position(|p| *p == v.y) {
            Some(i) => y_slot.push(i),
            None => {
                y_slot.push(y_packets.len());
                y_packets.push(v.y);
            }
        }
    }
    let vy: Vec<SparseLine> = y_packets.iter().map(sparse).collect();

    let mut h = vec![Vec::with_capacity(samples + 1); vs.len()];
    for i in 0..=samples {
        let t = i as f64 * dt;
        let (fx, fy) = (ux.evolve(t), uy.evolve(t));
        let y_norms: Vec<f64> = vy.iter().map(|g| product_norm_sqr(&fy, &g.evolve(t), dx)).collect();
        for (k, line_v) in vx.iter().enumerate() {
            h[k].push(product_norm_sqr(&fx, &line_v.evolve(t), dx) * y_norms[y_slot[k]]);
        }
    }
    let norm = |l: &SparseLine| (dx * l.modes.iter().map(|m| m.1.norm_sqr()).sum::<f64>()).sqrt();
    let u_norm = norm(&ux) * norm(&uy);
    (0..vs.len())
        .map(|k| {
            let rhs = u_norm * norm(&vx[k]) * norm(&vy[y_slot[k]]);
            (trapezoid(&h[k], dt).sqrt(), rhs)
        })
        .collect()
}

/// `(‖uv‖_{L²([0,T]×box)}, ‖u₀‖_{L²}‖v₀‖_{L²})` for arbitrary data, by exact
/// free evolution on the full grid and trapezoid quadrature in time.
pub fn bilinear_norm(u0: &SpectralField, v0: &SpectralField, t_end: f64, samples: usize) -> Result<(f64, f64)> {
    if u0.grid() != v0.grid() {
        return Err(Error::GridMismatch);
    }
    if samples == 0 {
        return Err(Error::Precondition("need at least one time step".into()));
    }
    let dt = t_end / samples as f64;
    let h = (0..=samples)
        .map(|i| {
            let t = i as f64 * dt;
            let u = free_evolve(u0, t).into_physical();
            let v = free_evolve(v0, t).into_physical();
            Ok(u.pointwise_mul(&v)?.norm_sqr())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((trapezoid(&h, dt).sqrt(), u0.l2_norm() * v0.l2_norm()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BilinearSetup {
    /// Low frequency `N`; the slow wave lives in `N ≤ |ξ| ≤ 2N`.
    pub n_low: f64,
    /// High frequencies `M`, each at least `8N`.
    pub m_list: Vec<f64>,
    pub t_end: f64,
    pub trials: usize,
    pub seed: u64,
    pub box_length: f64,
    /// Points per axis of the line grid.
    pub points: usize,
    /// Trapezoid steps on `[0, T]`.
    pub samples: usize,
}

impl Default for BilinearSetup {
    fn default() -> Self {
        BilinearSetup {
            n_low: 1.0,
            m_list: vec![8.0, 16.0, 32.0, 64.0],
            t_end: 2.0,
            trials: 4,
            seed: 0,
            box_length: 512.0,
            points: 32768,
            samples: 1000,
        }
    }
}

pub const BILINEAR_BAND: Band = Band::new(-0.65, -0.35);

impl BilinearSetup {
    fn sigma(&self) -> f64 {
        0.1 * self.n_low
    }

    pub fn validate(&self) -> Result<Grid> {
        let line = Grid::new(1, self.points, self.box_length)?;
        if !(self.n_low > 0.0) {
            return Err(Error::OutOfRange {
                name: "N",
                value: self.n_low,
                bound: "N > 0",
            });
        }
        if let Some(&m) = self.m_list.iter().find(|&&m| !(m >= 8.0 * self.n_low)) {
            return Err(Error::OutOfRange {
                name: "M",
                value: m,
                bound: "M >= 8N",
            });
        }
        if self.trials == 0 || self.samples == 0 || !(self.t_end > 0.0) {
            return Err(Error::Precondition("trials, samples and T must be positive".into()));
        }
        let m_max = self.m_list.iter().cloned().fold(0.0, f64::max);
        let reach = 1.5 * m_max + 3.0 * self.sigma();
        if reach > 0.8 * line.nyquist() {
            return Err(Error::Precondition(format!(
                "frequency {reach} is not resolved by {} points on a box of length {}",
                self.points, self.box_length
            )));
        }
        let travel = 2.0 * reach * self.t_end + 12.0 / self.sigma();
        if travel > self.box_length {
            return Err(Error::Precondition(format!(
                "box length {} is shorter than the packet travel {travel}",
                self.box_length
            )));
        }
        Ok(line)
    }

    /// Slow and fast data for one trial. Carriers sit at `1.5N` and `1.5M`
    /// along `x`, so the supports stay inside the dyadic annuli.
    pub fn data(&self, m: f64, trial: u64) -> (SeparableData, SeparableData) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        let sigma = self.sigma();
        let c = 0.5 * self.box_length;
        let spread = 0.5 / sigma;
        let mut jitter = || rng.random_range(-spread..spread);
        let u = SeparableData {
            x: Packet { carrier: 1.5 * self.n_low, sigma, center: c + jitter() },
            y: Packet { carrier: 0.0, sigma, center: c + jitter() },
        };
        let v = SeparableData {
            x: Packet { carrier: 1.5 * m, sigma, center: c + jitter() },
            y: Packet { carrier: 0.0, sigma, center: c + jitter() },
        };
        (u, v)
    }
}

/// Sweeps `M` at fixed `N`, records the largest normalized bilinear norm per
/// `M` and fits its `M`-exponent.
pub fn bilinear_experiment(setup: &BilinearSetup) -> Result<EstimateReport> {
    let line = setup.validate()?;
    let per_trial: Vec<Vec<(f64, f64)>> = (0..setup.trials as u64)
        .into_par_iter()
        .map(|k| {
            let pairs: Vec<_> = setup.m_list.iter().map(|&m| setup.data(m, k)).collect();
            let vs: Vec<SeparableData> = pairs.iter().map(|p| p.1).collect();
            separable_bilinear_sweep(&line, &pairs[0].0, &vs, setup.t_end, setup.samples)
        })
        .collect();
    let points = setup
        .m_list
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let &(lhs, rhs) = per_trial
                .iter()
                .map(|r| &r[i])
                .max_by(|a, b| (a.0 / a.1).total_cmp(&(b.0 / b.1)))
                .unwrap();
            SweepPoint::new(&[("N", setup.n_low), ("M", m), ("T", setup.t_end)], lhs, rhs)
        })
        .collect();
    let mut report = EstimateReport::new("bilinear", points);
    if setup.m_list.len() >= 3 {
        report.fit_exponent("M", |p| p.ratio, BILINEAR_BAND)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_modes_closed_form() {
        let grid = Grid::new(2, 16, 5.0).unwrap();
        let (au, av) = (0.7, 1.3);
        let u = SpectralField::plane_wave(grid, &[1, 0], Complex64::new(au, 0.0));
        let v = SpectralField::plane_wave(grid, &[-3, 5], Complex64::new(0.0, av));
        let t = 0.8;
        let (lhs, _) = bilinear_norm(&u, &v, t, 16).unwrap();
        let expected = au * av * (t * grid.volume()).sqrt();
        assert!((lhs - expected).abs() / expected < 1e-10);
    }

    #[test]
    fn separable_route_matches_full_grid() {
        let line = Grid::new(1, 64, 40.0).unwrap();
        let setup = BilinearSetup {
            box_length: 40.0,
            ..Default::default()
        };
        let (u, v) = setup.data(2.0, 1);
        let (a, ra) = separable_bilinear(&line, &u, &v, 0.5, 40);
        let (b, rb) = bilinear_norm(&u.to_field(&line).unwrap(), &v.to_field(&line).unwrap(), 0.5, 40).unwrap();
        assert!((a - b).abs() / b < 1e-10, "{a} vs {b}");
        assert!((ra - rb).abs() / rb < 1e-12);
    }

    #[test]
    fn rejects_close_frequencies() {
        let setup = BilinearSetup {
            n_low: 16.0,
            m_list: vec![32.0],
            ..Default::default()
        };
        let err = bilinear_experiment(&setup).unwrap_err();
        assert!(err.to_string().contains("M >= 8N"), "{err}");
    }

    #[test]
    fn packets_stay_in_their_annuli() {
        let setup = BilinearSetup::default();
        for &m in &setup.m_list {
            let (u, v) = setup.data(m, 0);
            let lo = |d: &SeparableData| d.x.carrier.abs() - 3.0 * d.x.sigma;
            let hi = |d: &SeparableData| d.x.spectral_radius().hypot(d.y.spectral_radius());
            assert!(lo(&u) >= setup.n_low && hi(&u) <= 2.0 * setup.n_low);
            assert!(lo(&v) >= m && hi(&v) <= 2.0 * m);
        }
    }
}
