//! The scaling symmetry `u_λ(t, x) = λ⁻¹ u(t/λ², x/λ)`.

use crate::error::{Error, Result};
use crate::spectral::{check_s, Repr, SpectralField};

/// Rescales initial data by `λ`: the box grows to `λL`, the lattice values are
/// divided by `λ`, and mode `k` keeps its index while `ξ` becomes `ξ/λ`.
///
/// In dimension `d`, `‖u_λ‖_{L²} = λ^{(d−2)/2}‖u‖_{L²}` and
/// `‖u_λ‖_{Ḣ¹} = λ^{(d−4)/2}‖u‖_{Ḣ¹}` hold exactly.
pub fn rescale(u0: &SpectralField, lambda: f64) -> Result<SpectralField> {
    if !is_power_of_two(lambda) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            bound: "lambda a power of two",
        });
    }
    let grid = u0.grid().scaled(lambda)?;
    let values = u0
        .in_repr(Repr::Physical)
        .into_values()
        .into_iter()
        .map(|v| v / lambda)
        .collect();
    let phys = SpectralField::from_values(grid, values, Repr::Physical)?;
    Ok(phys.into_repr(u0.repr()))
}

/// Time `t` of the original solution corresponds to `λ² t` for the rescaled one.
pub fn rescaled_time(t: f64, lambda: f64) -> f64 {
    lambda * lambda * t
}

/// `λ ∼ N^{(1−s)/(s−1/2)}`, rounded to the nearest power of two in log scale.
pub fn choose_lambda(n_cut: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    if !(n_cut.is_finite() && n_cut > 0.0) {
        return Err(Error::OutOfRange {
            name: "N",
            value: n_cut,
            bound: "N > 0",
        });
    }
    let exponent = (1.0 - s) / (s - 0.5);
    let log2 = exponent * n_cut.log2();
    Ok(2f64.powi(log2.round() as i32))
}

fn is_power_of_two(x: f64) -> bool {
    if !(x.is_finite() && x > 0.0) {
        return false;
    }
    let l = x.log2();
    l == l.round() && 2f64.powi(l as i32) == x
}
