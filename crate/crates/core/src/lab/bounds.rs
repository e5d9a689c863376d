//! Fixed-time and short-window estimates: I-operator bounds, homogeneous
//! Strichartz, local well-posedness norms and the nonlinear band bounds.

use num_complex::Complex64;
use rayon::prelude::*;

use super::random::RandomFieldSpec;
use super::report::{median_deviation, EstimateReport, SweepPoint};
use crate::diagnostics::{
    mixed_norm, s0_norm, s0_norm_with, sobolev_norm, temporal_norm, window_integral, Derivative,
    NormSpec,
};
use crate::error::{Error, Result};
use crate::solver::{evolve, linear_trajectory, SolverConfig, Trajectory};
use crate::spectral::{apply_multiplier, check_s, Grid, MultiplierSpec, SpectralField};

/// Allowed relative deviation of the per-`N` empirical constants from their
/// median.
pub const I_BOUND_STABILITY: f64 = 0.3;
/// Roughness margin of the random data used for the I-operator audit.
pub const ROUGHNESS_MARGIN: f64 = 0.01;

/// The four I-operator ratios for one field at one `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IOperatorRatios {
    /// `‖∇Iu‖_{L²}`.
    pub grad_iu: f64,
    /// `N^{1−s}‖u‖_{H^s}`.
    pub upper_rhs: f64,
    /// `‖u‖_{H^s} / ‖Iu‖_{H¹}`.
    pub lower: f64,
    /// `‖P_{>M}u‖ / ((1/M + 1/(N^{1−s}M^s))‖∇Iu‖)` at `M = 2N`.
    pub tail: f64,
    /// `‖|∇|^{1/2}P_{>M}u‖ / ((M^{−1/2} + 1/(N^{1−s}M^{s−1/2}))‖∇Iu‖)` at `M = 2N`.
    pub tail_half: f64,
}

impl IOperatorRatios {
    pub fn upper(&self) -> f64 {
        self.grad_iu / self.upper_rhs
    }
}

pub fn i_operator_ratios(u: &SpectralField, n_cut: f64, s: f64) -> IOperatorRatios {
    let iu = apply_multiplier(u, &MultiplierSpec::IOperator { n: n_cut, s });
    let grad_iu = sobolev_norm(&iu, 1.0, true);
    let hs = sobolev_norm(u, s, false);
    let m = 2.0 * n_cut;
    let high = apply_multiplier(u, &MultiplierSpec::CutoffHigh { n: m });
    let tail_rhs = (1.0 / m + 1.0 / (n_cut.powf(1.0 - s) * m.powf(s))) * grad_iu;
    let half_rhs = (m.powf(-0.5) + 1.0 / (n_cut.powf(1.0 - s) * m.powf(s - 0.5))) * grad_iu;
    IOperatorRatios {
        grad_iu,
        upper_rhs: n_cut.powf(1.0 - s) * hs,
        lower: hs / sobolev_norm(&iu, 1.0, false),
        tail: high.l2_norm() / tail_rhs,
        tail_half: sobolev_norm(&high, 0.5, true) / half_rhs,
    }
}

/// Audits `‖∇Iu‖ ≲ N^{1−s}‖u‖_{H^s}` (and the companion bounds) on `trials`
/// rough random fields for every `N`, reporting the empirical constant per `N`.
pub fn verify_i_operator_bounds(
    grid: Grid,
    n_list: &[f64],
    s: f64,
    trials: usize,
    seed: u64,
) -> Result<EstimateReport> {
    check_s(s)?;
    if trials < 10 {
        return Err(Error::Precondition(format!("need at least 10 trials, got {trials}")));
    }
    if n_list.is_empty() || n_list.iter().any(|&n| !(n > 0.0)) {
        return Err(Error::Precondition("N list must be nonempty and positive".into()));
    }
    let spec = RandomFieldSpec::sobolev_decay(s, ROUGHNESS_MARGIN, 1.0, seed);
    let fields: Vec<SpectralField> = (0..trials as u64)
        .into_par_iter()
        .map(|k| spec.generate(grid, k))
        .collect::<Result<_>>()?;

    let per_n: Vec<Vec<IOperatorRatios>> = n_list
        .par_iter()
        .map(|&n| {
            fields
                .iter()
                .map(|u| i_operator_ratios(u, n, s))
                .filter(|r| r.upper_rhs > 0.0)
                .collect()
        })
        .collect();

    let mut points = Vec::with_capacity(n_list.len());
    let (mut lower, mut tail, mut tail_half) = (0.0f64, 0.0f64, 0.0f64);
    for (&n, rs) in n_list.iter().zip(&per_n) {
        let best = rs
            .iter()
            .max_by(|a, b| a.upper().total_cmp(&b.upper()))
            .ok_or_else(|| Error::Degenerate("every random field vanished".into()))?;
        points.push(SweepPoint::new(&[("N", n), ("s", s)], best.grad_iu, best.upper_rhs));
        for r in rs {
            lower = lower.max(r.lower);
            tail = tail.max(r.tail);
            tail_half = tail_half.max(r.tail_half);
        }
    }

    let scale = Complex64::new(3.7, 0.0);
    let invariance = n_list
        .iter()
        .map(|&n| {
            let a = i_operator_ratios(&fields[0], n, s).upper();
            let b = i_operator_ratios(&fields[0].clone().scaled(scale), n, s).upper();
            (a - b).abs() / a
        })
        .fold(0.0, f64::max);

    let mut report = EstimateReport::new("i_operator_bounds", points);
    let deviation = median_deviation(&report.ratios());
    report.metric("median_deviation", deviation);
    report.metric("amplitude_invariance_error", invariance);
    report.metric("max_lower_ratio", lower);
    report.metric("max_tail_ratio", tail);
    report.metric("max_tail_half_ratio", tail_half);
    report.metric("trials", trials as f64);
    report.pass = deviation <= I_BOUND_STABILITY && invariance <= 1e-12;
    Ok(report)
}

fn linspace(t_end: f64, samples: usize) -> Vec<f64> {
    (0..=samples).map(|i| t_end * i as f64 / samples as f64).collect()
}

/// Homogeneous Strichartz audit: sampled `‖e^{itΔ}u₀‖_{S⁰([0,T])} / ‖u₀‖_{L²}`
/// per trial, repeated on `[0, 2T]` for the doubling comparison.
pub fn strichartz_check(
    grid: Grid,
    spec: &RandomFieldSpec,
    t_end: f64,
    trials: usize,
    samples: usize,
    pairs: &[(f64, f64)],
) -> Result<EstimateReport> {
    if trials == 0 || samples == 0 || !(t_end > 0.0) {
        return Err(Error::Precondition("trials, samples and T must be positive".into()));
    }
    let run = |k: u64, t: f64, steps: usize| -> Result<(f64, f64)> {
        let u0 = spec.generate(grid, k)?;
        let cfg = SolverConfig::new(grid, t / steps as f64, t).linear();
        let traj = linear_trajectory(&cfg, &u0, &linspace(t, steps))?;
        Ok((s0_norm(&traj, (0.0, t), pairs)?, u0.l2_norm()))
    };
    let single: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|k| run(k, t_end, samples))
        .collect::<Result<_>>()?;
    let doubled: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|k| run(k, 2.0 * t_end, 2 * samples))
        .collect::<Result<_>>()?;
    let points = single
        .iter()
        .enumerate()
        .map(|(k, &(lhs, rhs))| SweepPoint::new(&[("trial", k as f64), ("T", t_end)], lhs, rhs))
        .collect();
    let mut report = EstimateReport::new("strichartz", points);
    let max1 = report.max_ratio();
    let max2 = doubled.iter().map(|(a, b)| a / b).fold(0.0, f64::max);
    report.metric("max_ratio", max1);
    report.metric("max_ratio_doubled_t", max2);
    report.metric("doubling_change", max2 / max1 - 1.0);
    report.pass = report.ratios().iter().all(|r| r.is_finite());
    Ok(report)
}

fn l4_norm(traj: &Trajectory) -> Result<f64> {
    let h: Vec<f64> = traj.channels().l4x.iter().map(|v| v.powi(4)).collect();
    Ok(window_integral(traj.times(), &h, (0.0, traj.t_end()))?.powf(0.25))
}

/// Local theory on one small-`L⁴` window: the sampled `‖∇Iu‖_{S⁰}` and the
/// ratio `‖u‖_{L⁶L^{9/2}} / ((ε^{2/3} + N^{−1/2})(‖∇Iu‖_{S⁰} + 1))`.
pub fn lwp_check(config: &SolverConfig, u0: &SpectralField, pairs: &[(f64, f64)]) -> Result<EstimateReport> {
    let traj = evolve(config, u0)?;
    lwp_check_on(&traj, pairs)
}

pub fn lwp_check_on(traj: &Trajectory, pairs: &[(f64, f64)]) -> Result<EstimateReport> {
    let cfg = traj.config();
    let (n_cut, s, eps) = (cfg.n_cut, cfg.s, cfg.epsilon);
    let l4 = l4_norm(traj)?;
    if l4 > eps * (1.0 + 1e-12) {
        return Err(Error::L4Budget { norm: l4, epsilon: eps });
    }
    let window = (0.0, traj.t_end());
    let i_op = MultiplierSpec::IOperator { n: n_cut, s };
    let g = s0_norm_with(traj, window, pairs, Derivative::Grad, Some(&i_op))?;
    let l6 = mixed_norm(traj, &NormSpec::new(6.0, 4.5), window)?;
    let factor = eps.powf(2.0 / 3.0) + n_cut.powf(-0.5);
    let params = |id: f64| [("N", n_cut), ("epsilon", eps), ("estimate", id)];
    let points = vec![
        SweepPoint::new(&params(1.0), g, 1.0),
        SweepPoint::new(&params(2.0), l6, factor * (g + 1.0)),
    ];
    let mut report = EstimateReport::new("lwp", points);
    report.metric("l4_norm", l4);
    report.metric("grad_iu_s0", g);
    report.pass = report.ratios().iter().all(|r| r.is_finite());
    Ok(report)
}

/// Band bounds for the nonlinearity: for every `M`,
/// `‖P_M I(|u|²u)‖_{L²ₜₓ} / ((1/M + 1/N)‖∇Iu‖³_{S⁰})` (estimate 1) and, for
/// `M ≤ N`, `‖P_M(|u|²u)‖_{L¹L²} / ((1/M)‖∇Iu‖³_{S⁰})` (estimate 2).
pub fn nonlinear_band_check(traj: &Trajectory, m_list: &[f64], pairs: &[(f64, f64)]) -> Result<EstimateReport> {
    let cfg = traj.config();
    let (n_cut, s) = (cfg.n_cut, cfg.s);
    let window = (0.0, traj.t_end());
    let i_op = MultiplierSpec::IOperator { n: n_cut, s };
    let g = s0_norm_with(traj, window, pairs, Derivative::Grad, Some(&i_op))?;
    let cubes: Vec<SpectralField> = traj.snapshots().iter().map(|u| u.cubic()).collect();

    let rows: Vec<Vec<SweepPoint>> = m_list
        .par_iter()
        .map(|&m| {
            let block = MultiplierSpec::LpBlock { n: m };
            let projected = MultiplierSpec::Product {
                factors: vec![block.clone(), i_op.clone()],
            };
            let l2: Vec<f64> = cubes.iter().map(|c| apply_multiplier(c, &projected).l2_norm()).collect();
            let lhs1 = temporal_norm(traj.times(), &l2, 2.0, window)?;
            let mut out = vec![SweepPoint::new(
                &[("M", m), ("estimate", 1.0)],
                lhs1,
                (1.0 / m + 1.0 / n_cut) * g.powi(3),
            )];
            if m <= n_cut {
                let plain: Vec<f64> = cubes.iter().map(|c| apply_multiplier(c, &block).l2_norm()).collect();
                let lhs2 = temporal_norm(traj.times(), &plain, 1.0, window)?;
                out.push(SweepPoint::new(&[("M", m), ("estimate", 2.0)], lhs2, g.powi(3) / m));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let points: Vec<SweepPoint> = rows.into_iter().flatten().collect();
    let max_of = |id: f64| {
        points
            .iter()
            .filter(|p| p.param("estimate") == Some(id))
            .map(|p| p.ratio)
            .fold(0.0, f64::max)
    };
    let (m1, m2) = (max_of(1.0), max_of(2.0));
    let mut report = EstimateReport::new("nonlinear_bands", points);
    report.metric("grad_iu_s0", g);
    report.metric("max_ratio_projected", m1);
    report.metric("max_ratio_unprojected", m2);
    report.pass = report.ratios().iter().all(|r| r.is_finite());
    Ok(report)
}
