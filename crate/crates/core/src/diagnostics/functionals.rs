//! Mass, energy, modified energy and Sobolev norms of a single field.

use crate::spectral::{apply_multiplier, MultiplierSpec, Repr, SpectralField};

/// `M(u) = ∫|u|²`.
pub fn mass(f: &SpectralField) -> f64 {
    f.norm_sqr()
}

/// `½∫|∇u|²`, evaluated in frequency space.
pub fn kinetic_energy(f: &SpectralField) -> f64 {
    let spec = f.in_repr(Repr::Frequency);
    let xi2 = spec.grid().xi_squared();
    let sum: f64 = spec
        .values()
        .iter()
        .zip(&xi2)
        .map(|(v, k2)| k2 * v.norm_sqr())
        .sum();
    0.5 * spec.grid().cell_volume() * sum
}

/// `¼∫|u|⁴`, evaluated in physical space.
pub fn potential_energy(f: &SpectralField) -> f64 {
    let phys = f.in_repr(Repr::Physical);
    let sum: f64 = phys.values().iter().map(|v| v.norm_sqr().powi(2)).sum();
    0.25 * phys.grid().cell_volume() * sum
}

/// `E(u) = ½∫|∇u|² + ¼∫|u|⁴`.
pub fn energy(f: &SpectralField) -> f64 {
    kinetic_energy(f) + potential_energy(f)
}

/// `E(Iu)` for the I-operator with cutoff `n_cut` and regularity `s`.
pub fn modified_energy(f: &SpectralField, n_cut: f64, s: f64) -> f64 {
    energy(&apply_multiplier(f, &MultiplierSpec::IOperator { n: n_cut, s }))
}

/// Kinetic part of `E(Iu)`, which the free flow conserves exactly.
pub fn modified_kinetic_energy(f: &SpectralField, n_cut: f64, s: f64) -> f64 {
    kinetic_energy(&apply_multiplier(f, &MultiplierSpec::IOperator { n: n_cut, s }))
}

/// `‖u‖_{Ḣ^s}` (weight `|ξ|^{2s}`) or `‖u‖_{H^s}` (weight `(1+|ξ|²)^s`).
pub fn sobolev_norm(f: &SpectralField, s: f64, homogeneous: bool) -> f64 {
    let spec = f.in_repr(Repr::Frequency);
    let xi2 = spec.grid().xi_squared();
    let sum: f64 = spec
        .values()
        .iter()
        .zip(&xi2)
        .map(|(v, &k2)| {
            let w = if homogeneous {
                if s == 0.0 {
                    1.0
                } else if k2 == 0.0 {
                    0.0
                } else {
                    k2.powf(s)
                }
            } else {
                (1.0 + k2).powf(s)
            };
            w * v.norm_sqr()
        })
        .sum();
    (spec.grid().cell_volume() * sum).sqrt()
}

/// Spatial `L^q` norm; `q = ∞` gives the sup norm.
pub fn lq_norm(f: &SpectralField, q: f64) -> f64 {
    let phys = f.in_repr(Repr::Physical);
    let mags: Vec<f64> = phys.values().iter().map(|v| v.norm()).collect();
    lq_of_magnitudes(&mags, q, phys.grid().cell_volume())
}

pub(crate) fn lq_of_magnitudes(mags: &[f64], q: f64, cell_volume: f64) -> f64 {
    if q.is_infinite() {
        return mags.iter().cloned().fold(0.0, f64::max);
    }
    if q == 2.0 {
        return (cell_volume * mags.iter().map(|m| m * m).sum::<f64>()).sqrt();
    }
    if q == 4.0 {
        return (cell_volume * mags.iter().map(|m| (m * m) * (m * m)).sum::<f64>()).powf(0.25);
    }
    (cell_volume * mags.iter().map(|m| m.powf(q)).sum::<f64>()).powf(1.0 / q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{gradient, Grid};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_field(grid: Grid, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        SpectralField::from_values(grid, values, Repr::Physical).unwrap()
    }

    #[test]
    fn plane_wave_mass_and_energy() {
        let grid = Grid::new(2, 16, 3.0).unwrap();
        let a = 0.7;
        let k = [2, -1];
        let f = SpectralField::plane_wave(grid, &k, Complex64::new(a, 0.0));
        let v = grid.volume();
        let k2 = grid.k_unit().powi(2) * 5.0;
        assert!((mass(&f) - a * a * v).abs() < 1e-12);
        let expected = 0.5 * k2 * a * a * v + 0.25 * a.powi(4) * v;
        assert!((energy(&f) - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn constant_and_zero() {
        let grid = Grid::new(3, 8, 2.0).unwrap();
        let z = SpectralField::zeros(grid, Repr::Physical);
        assert_eq!(mass(&z), 0.0);
        assert_eq!(energy(&z), 0.0);
        let a = 1.5;
        let c = SpectralField::from_fn(grid, |_| Complex64::new(a, 0.0));
        assert!((energy(&c) - 0.25 * a.powi(4) * grid.volume()).abs() < 1e-12);
    }

    #[test]
    fn mass_matches_parseval_sum() {
        let grid = Grid::new(2, 16, 5.0).unwrap();
        let f = random_field(grid, 1);
        let m = mass(&f);
        let spec = f.into_frequency();
        let m2 = grid.cell_volume() * spec.values().iter().map(|v| v.norm_sqr()).sum::<f64>();
        assert!((m - m2).abs() / m < 1e-12);
    }

    #[test]
    fn modified_energy_limits() {
        let grid = Grid::new(2, 16, 2.0 * PI).unwrap();
        let f = random_field(grid, 2);
        let e = energy(&f);
        assert!((modified_energy(&f, grid.max_frequency(), 0.7) - e).abs() / e < 1e-12);

        let band_limited = SpectralField::plane_wave(grid, &[2, 1], Complex64::new(0.4, 0.1))
            .add(&SpectralField::plane_wave(grid, &[-1, 1], Complex64::new(0.2, 0.0)))
            .unwrap();
        let e = energy(&band_limited);
        assert_eq!(modified_energy(&band_limited, 3.0, 0.6), e);
    }

    #[test]
    fn sobolev_norm_identities() {
        let grid = Grid::new(2, 16, 4.0).unwrap();
        let f = random_field(grid, 3);
        assert!((sobolev_norm(&f, 0.0, true) - mass(&f).sqrt()).abs() < 1e-12);
        assert!((sobolev_norm(&f, 0.0, false) - mass(&f).sqrt()).abs() < 1e-12);
        let grad: f64 = gradient(&f).iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
        assert!((sobolev_norm(&f, 1.0, true) - grad).abs() / grad < 1e-12);

        let a = 0.3;
        let w = SpectralField::plane_wave(grid, &[3, 0], Complex64::new(a, 0.0));
        let kn = 3.0 * grid.k_unit();
        let s = 0.75;
        let expected = kn.powf(s) * a * grid.volume().sqrt();
        assert!((sobolev_norm(&w, s, true) - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn lq_of_plane_wave() {
        let grid = Grid::new(1, 32, 2.0).unwrap();
        let a = 0.9;
        let w = SpectralField::plane_wave(grid, &[4], Complex64::new(a, 0.0));
        for q in [1.0, 2.0, 3.0, 4.0, 7.5] {
            let expected = a * grid.volume().powf(1.0 / q);
            assert!((lq_norm(&w, q) - expected).abs() < 1e-12);
        }
        assert!((lq_norm(&w, f64::INFINITY) - a).abs() < 1e-12);
    }
}
