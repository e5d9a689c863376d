//! Fourier multipliers: smooth cutoffs, Littlewood-Paley blocks, the
//! I-operator, derivatives and the free Schrödinger propagator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Repr, SpectralField};
use crate::error::{Error, Result};

/// Human-readable definitions of the transition profiles, echoed into run manifests.
pub const PHI_DEFINITION: &str = "phi(r) = 1 for r <= 1, 0 for r >= 2, \
     1 - S(r - 1) on (1, 2) with S(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)})";
pub const M_DEFINITION: &str = "m_N(xi) = 1 for |xi| <= N, (N/|xi|)^(1-s) for |xi| >= 2N, \
     exp(-(1-s) ln2 * S((|xi| - N)/N)) on (N, 2N)";

/// C^∞ step rising from 0 at `x <= 0` to 1 at `x >= 1`, built from `e^{-1/x}`.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / x).exp();
    let b = (-1.0 / (1.0 - x)).exp();
    a / (a + b)
}

/// Radial cutoff: 1 on `[0, 1]`, 0 on `[2, ∞)`, smooth and nonincreasing between.
pub fn cutoff_phi(r: f64) -> f64 {
    1.0 - smooth_step(r - 1.0)
}

/// The I-operator symbol `m_N(|ξ|)` for regularity `s`.
///
/// Equal to 1 below `N` and to `(N/|ξ|)^{1-s}` above `2N`; on `(N, 2N)` the
/// logarithm is interpolated with [`smooth_step`], so the symbol is monotone
/// and continuous at both junctions.
pub fn symbol_m(xi_norm: f64, n_cut: f64, s: f64) -> f64 {
    let decay = 1.0 - s;
    if xi_norm <= n_cut {
        1.0
    } else if xi_norm >= 2.0 * n_cut {
        (n_cut / xi_norm).powf(decay)
    } else {
        let t = smooth_step((xi_norm - n_cut) / n_cut);
        (-decay * std::f64::consts::LN_2 * t).exp()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiplierSpec {
    /// `P_{≤N}`: symbol `φ(|ξ|/N)`.
    CutoffLow { n: f64 },
    /// `P_{>N}`: symbol `1 − φ(|ξ|/N)`.
    CutoffHigh { n: f64 },
    /// `P_N = P_{≤2N} − P_{≤N}`.
    LpBlock { n: f64 },
    /// `I_N` with symbol [`symbol_m`].
    IOperator { n: f64, s: f64 },
    /// `|∇|^order`, zero mode sent to 0 for positive order.
    FracDeriv { order: f64 },
    /// `⟨∇⟩^s = (1 + |ξ|²)^{s/2}`.
    Bessel { s: f64 },
    /// `∂_axis`, symbol `iξ_axis`.
    Gradient { axis: usize },
    /// `e^{itΔ}`, symbol `e^{-it|ξ|²}`.
    FreePropagator { t: f64 },
    /// Composition; symbols multiply.
    Product { factors: Vec<MultiplierSpec> },
}

impl MultiplierSpec {
    pub fn i_operator(n: f64, s: f64) -> Result<Self> {
        check_cutoff(n)?;
        check_s(s)?;
        Ok(MultiplierSpec::IOperator { n, s })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MultiplierSpec::CutoffLow { n }
            | MultiplierSpec::CutoffHigh { n }
            | MultiplierSpec::LpBlock { n } => check_cutoff(*n),
            MultiplierSpec::IOperator { n, s } => {
                check_cutoff(*n)?;
                check_s(*s)
            }
            MultiplierSpec::FracDeriv { order } if *order < 0.0 => Err(Error::OutOfRange {
                name: "order",
                value: *order,
                bound: "order >= 0",
            }),
            MultiplierSpec::Gradient { axis } if *axis > 2 => Err(Error::OutOfRange {
                name: "axis",
                value: *axis as f64,
                bound: "axis < dim",
            }),
            MultiplierSpec::Product { factors } => factors.iter().try_for_each(|f| f.validate()),
            _ => Ok(()),
        }
    }

    /// Symbol value at wave vector `xi` with `|ξ|² = xi_sq`.
    pub fn symbol(&self, xi: &[f64; 3], xi_sq: f64) -> Complex64 {
        let r = xi_sq.sqrt();
        let real = |v: f64| Complex64::new(v, 0.0);
        match self {
            MultiplierSpec::CutoffLow { n } => real(cutoff_phi(r / n)),
            MultiplierSpec::CutoffHigh { n } => real(1.0 - cutoff_phi(r / n)),
            MultiplierSpec::LpBlock { n } => real(cutoff_phi(r / (2.0 * n)) - cutoff_phi(r / n)),
            MultiplierSpec::IOperator { n, s } => real(symbol_m(r, *n, *s)),
            MultiplierSpec::FracDeriv { order } => {
                if *order == 0.0 {
                    real(1.0)
                } else if r == 0.0 {
                    real(0.0)
                } else {
                    real(r.powf(*order))
                }
            }
            MultiplierSpec::Bessel { s } => real((1.0 + xi_sq).powf(s / 2.0)),
            MultiplierSpec::Gradient { axis } => Complex64::new(0.0, xi[*axis]),
            MultiplierSpec::FreePropagator { t } => Complex64::from_polar(1.0, -t * xi_sq),
            MultiplierSpec::Product { factors } => factors
                .iter()
                .fold(real(1.0), |acc, f| acc * f.symbol(xi, xi_sq)),
        }
    }
}

fn check_cutoff(n: f64) -> Result<()> {
    if n.is_finite() && n > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "N",
            value: n,
            bound: "N > 0",
        })
    }
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if s > 0.5 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "s",
            value: s,
            bound: "s ∈ (1/2, 1)",
        })
    }
}

/// Multiplies the Fourier coefficients of `f` by the symbol of `m`.
///
/// The result comes back in the same representation as `f`. The two cutoff
/// halves are evaluated so that `P_{≤N}u + P_{>N}u` reproduces `u` exactly in
/// floating point: the high part is `û − fl(φû)` and the low part is
/// `û − high`, and both subtractions are exact by Sterbenz's lemma.
pub fn apply_multiplier(f: &SpectralField, m: &MultiplierSpec) -> SpectralField {
    let caller = f.repr();
    let mut out = f.in_repr(Repr::Frequency);
    let grid = *out.grid();
    let xi_sq = grid.xi_squared();
    let values = out.values_mut();
    match m {
        MultiplierSpec::CutoffLow { n } | MultiplierSpec::CutoffHigh { n } => {
            let keep_low = matches!(m, MultiplierSpec::CutoffLow { .. });
            for (v, x2) in values.iter_mut().zip(&xi_sq) {
                let phi = cutoff_phi(x2.sqrt() / n);
                let low = *v * phi;
                let high = *v - low;
                *v = if keep_low { *v - high } else { high };
            }
        }
        _ => {
            for (flat, (v, x2)) in values.iter_mut().zip(&xi_sq).enumerate() {
                let xi = grid.wave_vector(flat);
                *v *= m.symbol(&xi, *x2);
            }
        }
    }
    out.into_repr(caller)
}

/// Littlewood-Paley block `P_N f = P_{≤2N} f − P_{≤N} f`.
pub fn lp_block(f: &SpectralField, n: f64) -> SpectralField {
    apply_multiplier(f, &MultiplierSpec::LpBlock { n })
}

/// `|∇|^order f`.
pub fn frac_derivative(f: &SpectralField, order: f64) -> SpectralField {
    apply_multiplier(f, &MultiplierSpec::FracDeriv { order })
}

/// `⟨∇⟩^s f`.
pub fn bessel_derivative(f: &SpectralField, s: f64) -> SpectralField {
    apply_multiplier(f, &MultiplierSpec::Bessel { s })
}

/// Full gradient, one field per axis.
pub fn gradient(f: &SpectralField) -> Vec<SpectralField> {
    (0..f.grid().dim())
        .map(|axis| apply_multiplier(f, &MultiplierSpec::Gradient { axis }))
        .collect()
}
