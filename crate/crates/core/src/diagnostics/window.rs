//! Piecewise-linear time windows over a snapshot grid.

use crate::error::{Error, Result};

fn span_tolerance(times: &[f64]) -> f64 {
    let end = times.last().copied().unwrap_or(0.0).abs();
    1e-12 * end.max(1.0)
}

/// Validates `[t1, t2]` against the snapshot span, snapping endpoints that
/// overshoot by rounding noise.
pub fn check_interval(times: &[f64], interval: (f64, f64)) -> Result<(f64, f64)> {
    let (t1, t2) = interval;
    let (start, end) = match (times.first(), times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Precondition("empty time grid".into())),
    };
    let tol = span_tolerance(times);
    let out = || Error::IntervalOutOfRange { t1, t2, start, end };
    if !(t1.is_finite() && t2.is_finite()) || t1 > t2 || t1 < start - tol || t2 > end + tol {
        return Err(out());
    }
    Ok((t1.max(start), t2.min(end)))
}

/// Index range `lo..=hi` of the snapshots whose cells meet `[t1, t2]`.
pub(crate) fn bracket(times: &[f64], t1: f64, t2: f64) -> (usize, usize) {
    let lo = times.partition_point(|&t| t <= t1).saturating_sub(1);
    let hi = times.partition_point(|&t| t < t2).min(times.len() - 1);
    (lo, hi.max(lo))
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let i = times.partition_point(|&s| s <= t);
    if i == 0 {
        return values[0];
    }
    if i == times.len() {
        return values[times.len() - 1];
    }
    let (a, b) = (times[i - 1], times[i]);
    let w = (t - a) / (b - a);
    (1.0 - w) * values[i - 1] + w * values[i]
}

/// Samples `(t, value)` of the linear interpolant of `values` on `[t1, t2]`:
/// both endpoints and every snapshot strictly between them.
pub fn window_samples(times: &[f64], values: &[f64], interval: (f64, f64)) -> Result<Vec<(f64, f64)>> {
    if times.len() != values.len() {
        return Err(Error::Precondition(format!(
            "{} times for {} values",
            times.len(),
            values.len()
        )));
    }
    let (t1, t2) = check_interval(times, interval)?;
    let mut out = vec![(t1, interpolate(times, values, t1))];
    for (&t, &v) in times.iter().zip(values) {
        if t > t1 && t < t2 {
            out.push((t, v));
        }
    }
    if t2 > t1 {
        out.push((t2, interpolate(times, values, t2)));
    }
    Ok(out)
}

/// Composite trapezoid integral of the linear interpolant over `[t1, t2]`.
pub fn window_integral(times: &[f64], values: &[f64], interval: (f64, f64)) -> Result<f64> {
    let samples = window_samples(times, values, interval)?;
    Ok(samples
        .windows(2)
        .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
        .sum())
}

/// Maximum of the linear interpolant over `[t1, t2]`.
pub fn window_max(times: &[f64], values: &[f64], interval: (f64, f64)) -> Result<f64> {
    let samples = window_samples(times, values, interval)?;
    Ok(samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_is_exact_for_linear_data() {
        let times: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let values: Vec<f64> = times.iter().map(|t| 3.0 * t + 1.0).collect();
        let exact = |a: f64, b: f64| 1.5 * (b * b - a * a) + (b - a);
        for (a, b) in [(0.0, 1.0), (0.13, 0.77), (0.25, 0.25), (0.3, 0.4)] {
            let got = window_integral(&times, &values, (a, b)).unwrap();
            assert!((got - exact(a, b)).abs() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn max_includes_interpolated_endpoints() {
        let times = [0.0, 1.0, 2.0];
        let values = [0.0, 2.0, 0.0];
        assert_eq!(window_max(&times, &values, (0.0, 0.5)).unwrap(), 1.0);
        assert_eq!(window_max(&times, &values, (0.5, 1.5)).unwrap(), 2.0);
    }

    #[test]
    fn rejects_out_of_span() {
        let times = [0.0, 1.0];
        let values = [1.0, 1.0];
        assert!(window_integral(&times, &values, (-0.1, 0.5)).is_err());
        assert!(window_integral(&times, &values, (0.5, 1.1)).is_err());
        assert!(window_integral(&times, &values, (0.6, 0.5)).is_err());
        assert!(window_integral(&times, &values, (0.0, 1.0 + 1e-14)).is_ok());
    }

    #[test]
    fn bracket_covers_window() {
        let times = [0.0, 0.1, 0.2, 0.3, 0.4];
        assert_eq!(bracket(&times, 0.0, 0.4), (0, 4));
        assert_eq!(bracket(&times, 0.15, 0.25), (1, 3));
        assert_eq!(bracket(&times, 0.1, 0.2), (1, 2));
        assert_eq!(bracket(&times, 0.2, 0.2), (2, 2));
    }
}
