//! Mixed space-time norms `L^p_t L^q_x` and the sampled `S⁰` norm.

use serde::{Deserialize, Serialize};

use super::functionals::lq_of_magnitudes;
use super::window::{bracket, check_interval, window_integral, window_max};
use crate::error::{Error, Result};
use crate::solver::Trajectory;
use crate::spectral::{
    apply_multiplier, bessel_derivative, frac_derivative, gradient, MultiplierSpec, Repr,
    SpectralField,
};

/// Derivative applied to each snapshot before the spatial norm.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivative {
    #[default]
    None,
    /// Pointwise `|∇u|`.
    Grad,
    /// `|∇|^order u`.
    FracDeriv { order: f64 },
    /// `⟨∇⟩^s u`.
    InhomogSobolev { s: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    /// Time exponent, `f64::INFINITY` allowed.
    pub p: f64,
    /// Space exponent, `f64::INFINITY` allowed.
    pub q: f64,
    #[serde(default)]
    pub derivative: Derivative,
    #[serde(default)]
    pub pre_multiplier: Option<MultiplierSpec>,
}

impl NormSpec {
    pub fn new(p: f64, q: f64) -> Self {
        NormSpec {
            p,
            q,
            derivative: Derivative::None,
            pre_multiplier: None,
        }
    }

    pub fn with_derivative(mut self, d: Derivative) -> Self {
        self.derivative = d;
        self
    }

    pub fn with_pre_multiplier(mut self, m: MultiplierSpec) -> Self {
        self.pre_multiplier = Some(m);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(v >= 1.0) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    bound: "exponent >= 1",
                });
            }
        }
        if let Some(m) = &self.pre_multiplier {
            m.validate()?;
        }
        Ok(())
    }
}

/// Hölder conjugate `p/(p−1)`.
pub fn dual_exponent(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

/// `2/p = d(1/2 − 1/q)` to within 1e−12, for `p, q ≥ 2`.
pub fn is_admissible(p: f64, q: f64, dim: usize) -> bool {
    if !(p >= 2.0 && q >= 2.0) {
        return false;
    }
    let lhs = 2.0 / p;
    let rhs = dim as f64 * (0.5 - 1.0 / q);
    (lhs - rhs).abs() <= 1e-12
}

/// Finite admissible sample used in place of the full supremum.
pub fn default_pairs(dim: usize) -> Vec<(f64, f64)> {
    let inf = f64::INFINITY;
    match dim {
        1 => vec![(inf, 2.0), (4.0, inf), (8.0, 4.0), (6.0, 6.0), (12.0, 3.0)],
        2 => vec![(inf, 2.0), (4.0, 4.0), (6.0, 3.0), (3.0, 6.0), (8.0, 8.0 / 3.0)],
        _ => vec![(inf, 2.0), (2.0, 6.0), (4.0, 3.0), (6.0, 18.0 / 7.0), (10.0, 30.0 / 13.0)],
    }
}

/// Pointwise magnitude of the differentiated, pre-multiplied snapshot.
pub fn pointwise_magnitude(
    u: &SpectralField,
    derivative: Derivative,
    pre: Option<&MultiplierSpec>,
) -> Vec<f64> {
    let base = match pre {
        Some(m) => apply_multiplier(u, m),
        None => u.clone(),
    };
    let moduli = |f: SpectralField| -> Vec<f64> {
        f.into_repr(Repr::Physical).values().iter().map(|v| v.norm()).collect()
    };
    match derivative {
        Derivative::None => moduli(base),
        Derivative::FracDeriv { order } => moduli(frac_derivative(&base, order)),
        Derivative::InhomogSobolev { s } => moduli(bessel_derivative(&base, s)),
        Derivative::Grad => {
            let comps: Vec<SpectralField> = gradient(&base)
                .into_iter()
                .map(|g| g.into_repr(Repr::Physical))
                .collect();
            (0..base.values().len())
                .map(|i| comps.iter().map(|g| g.values()[i].norm_sqr()).sum::<f64>().sqrt())
                .collect()
        }
    }
}

/// Spatial norm of one snapshot under `spec`, ignoring `p`.
pub fn spatial_norm(u: &SpectralField, spec: &NormSpec) -> f64 {
    let mags = pointwise_magnitude(u, spec.derivative, spec.pre_multiplier.as_ref());
    lq_of_magnitudes(&mags, spec.q, u.grid().cell_volume())
}

/// Temporal `L^p` of a per-snapshot spatial norm series over `interval`.
pub fn temporal_norm(times: &[f64], g: &[f64], p: f64, interval: (f64, f64)) -> Result<f64> {
    if p.is_infinite() {
        return window_max(times, g, interval);
    }
    let h: Vec<f64> = g.iter().map(|v| v.powf(p)).collect();
    Ok(window_integral(times, &h, interval)?.powf(1.0 / p))
}

/// `‖u‖_{L^p_t L^q_x([t1, t2])}` with the derivative and pre-multiplier of `spec`.
pub fn mixed_norm(traj: &Trajectory, spec: &NormSpec, interval: (f64, f64)) -> Result<f64> {
    spec.validate()?;
    let (t1, t2) = check_interval(traj.times(), interval)?;
    let (lo, hi) = bracket(traj.times(), t1, t2);
    let g: Vec<f64> = traj.snapshots()[lo..=hi]
        .iter()
        .map(|u| spatial_norm(u, spec))
        .collect();
    temporal_norm(&traj.times()[lo..=hi], &g, spec.p, (t1, t2))
}

/// Maximum of the plain mixed norms over `pairs`.
pub fn s0_norm(traj: &Trajectory, interval: (f64, f64), pairs: &[(f64, f64)]) -> Result<f64> {
    s0_norm_with(traj, interval, pairs, Derivative::None, None)
}

/// Maximum over `pairs` of the mixed norms of the differentiated and
/// pre-multiplied trajectory, e.g. `‖∇Iu‖_{S⁰}`.
pub fn s0_norm_with(
    traj: &Trajectory,
    interval: (f64, f64),
    pairs: &[(f64, f64)],
    derivative: Derivative,
    pre: Option<&MultiplierSpec>,
) -> Result<f64> {
    let dim = traj.grid().dim();
    if pairs.is_empty() {
        return Err(Error::Precondition("empty admissible pair set".into()));
    }
    if let Some(&(p, q)) = pairs.iter().find(|&&(p, q)| !is_admissible(p, q, dim)) {
        return Err(Error::NonAdmissible { p, q, dim });
    }
    let (t1, t2) = check_interval(traj.times(), interval)?;
    let (lo, hi) = bracket(traj.times(), t1, t2);
    let cell = traj.grid().cell_volume();
    let mut spatial = vec![Vec::with_capacity(hi - lo + 1); pairs.len()];
    for u in &traj.snapshots()[lo..=hi] {
        let mags = pointwise_magnitude(u, derivative, pre);
        for (k, &(_, q)) in pairs.iter().enumerate() {
            spatial[k].push(lq_of_magnitudes(&mags, q, cell));
        }
    }
    let times = &traj.times()[lo..=hi];
    let mut best: f64 = 0.0;
    for (k, &(p, _)) in pairs.iter().enumerate() {
        best = best.max(temporal_norm(times, &spatial[k], p, (t1, t2))?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::mass;
    use crate::solver::{evolve, SolverConfig};
    use crate::spectral::Grid;
    use num_complex::Complex64;

    fn linear_plane_wave(a: f64) -> (Trajectory, Grid) {
        let grid = Grid::new(2, 16, 3.0).unwrap();
        let u0 = SpectralField::plane_wave(grid, &[1, 2], Complex64::new(a, 0.0));
        let cfg = SolverConfig::new(grid, 0.01, 0.5).with_stride(5).linear();
        (evolve(&cfg, &u0).unwrap(), grid)
    }

    #[test]
    fn admissibility_arithmetic() {
        assert!(is_admissible(f64::INFINITY, 2.0, 3));
        assert!(is_admissible(2.0, 6.0, 3));
        assert!(!is_admissible(4.0, 4.0, 3));
        assert!(is_admissible(4.0, 4.0, 2));
        assert!(!is_admissible(1.5, 6.0, 3));
        for dim in 1..=3 {
            for (p, q) in default_pairs(dim) {
                assert!(is_admissible(p, q, dim), "({p}, {q}) in d={dim}");
            }
        }
    }

    #[test]
    fn dual_exponents() {
        assert_eq!(dual_exponent(2.0), 2.0);
        assert_eq!(dual_exponent(4.0), 4.0 / 3.0);
        assert_eq!(dual_exponent(1.0), f64::INFINITY);
        assert_eq!(dual_exponent(f64::INFINITY), 1.0);
    }

    #[test]
    fn static_modulus_l4() {
        let a = 0.6;
        let (traj, grid) = linear_plane_wave(a);
        let t = 0.5;
        let got = mixed_norm(&traj, &NormSpec::new(4.0, 4.0), (0.0, t)).unwrap();
        let expected = a * (t * grid.volume()).powf(0.25);
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn sup_l2_is_sqrt_mass() {
        let (traj, _) = linear_plane_wave(0.6);
        let got = mixed_norm(&traj, &NormSpec::new(f64::INFINITY, 2.0), (0.0, 0.5)).unwrap();
        let expected = traj.snapshots().iter().map(|u| mass(u).sqrt()).fold(0.0, f64::max);
        assert!((got - expected).abs() < 1e-12);
        let s0 = s0_norm(&traj, (0.0, 0.5), &[(f64::INFINITY, 2.0)]).unwrap();
        assert!((s0 - expected).abs() < 1e-12);
    }

    #[test]
    fn s0_is_monotone_in_pair_set() {
        let (traj, _) = linear_plane_wave(0.6);
        let all = default_pairs(2);
        let mut prev = 0.0;
        for k in 1..=all.len() {
            let v = s0_norm(&traj, (0.1, 0.4), &all[..k]).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(matches!(
            s0_norm(&traj, (0.0, 0.5), &[(2.0, 6.0)]),
            Err(Error::NonAdmissible { .. })
        ));
    }

    #[test]
    fn gradient_norm_of_plane_wave() {
        let a = 0.6;
        let (traj, grid) = linear_plane_wave(a);
        let kn = grid.k_unit() * 5f64.sqrt();
        let spec = NormSpec::new(f64::INFINITY, 2.0).with_derivative(Derivative::Grad);
        let got = mixed_norm(&traj, &spec, (0.0, 0.5)).unwrap();
        let expected = kn * a * grid.volume().sqrt();
        assert!((got - expected).abs() / expected < 1e-12);
        let frac = NormSpec::new(f64::INFINITY, 2.0).with_derivative(Derivative::FracDeriv { order: 1.0 });
        assert!((mixed_norm(&traj, &frac, (0.0, 0.5)).unwrap() - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn interval_checks() {
        let (traj, _) = linear_plane_wave(0.6);
        assert!(matches!(
            mixed_norm(&traj, &NormSpec::new(4.0, 4.0), (0.0, 0.7)),
            Err(Error::IntervalOutOfRange { .. })
        ));
        assert!(mixed_norm(&traj, &NormSpec::new(0.5, 4.0), (0.0, 0.5)).is_err());
    }
}
