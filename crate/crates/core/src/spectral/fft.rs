//! Unitary multi-dimensional FFT on the lattice.
//!
//! Plans are cached in a thread-local planner, so each worker thread owns
//! its own plans and nothing is shared across threads.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::Grid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

/// In-place transform of a lattice array, normalized by `n^(-dim/2)`.
pub(crate) fn transform(grid: &Grid, data: &mut [Complex64], direction: FftDirection) {
    let n = grid.n();
    let dim = grid.dim();
    debug_assert_eq!(data.len(), grid.len());
    let fft = plan(n, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];

    // Last axis is contiguous: rustfft handles the batch directly.
    fft.process_with_scratch(data, &mut scratch);

    // Remaining axes: gather strided lines into a contiguous batch.
    if dim > 1 {
        let mut lines = vec![Complex64::new(0.0, 0.0); data.len()];
        for axis in 0..dim - 1 {
            let stride = n.pow((dim - 1 - axis) as u32);
            let block = stride * n;
            let mut line = 0;
            for base in (0..data.len()).step_by(block) {
                for offset in 0..stride {
                    let start = base + offset;
                    let dst = &mut lines[line * n..(line + 1) * n];
                    for (j, d) in dst.iter_mut().enumerate() {
                        *d = data[start + j * stride];
                    }
                    line += 1;
                }
            }
            fft.process_with_scratch(&mut lines, &mut scratch);
            line = 0;
            for base in (0..data.len()).step_by(block) {
                for offset in 0..stride {
                    let start = base + offset;
                    let src = &lines[line * n..(line + 1) * n];
                    for (j, s) in src.iter().enumerate() {
                        data[start + j * stride] = *s;
                    }
                    line += 1;
                }
            }
        }
    }

    let scale = 1.0 / (grid.len() as f64).sqrt();
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// One-dimensional unitary transform of a single line of length `n`.
pub fn transform_line(data: &mut [Complex64], direction: FftDirection) {
    let n = data.len();
    let fft = plan(n, direction);
    fft.process(data);
    let scale = 1.0 / (n as f64).sqrt();
    for v in data.iter_mut() {
        *v *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Direct O(N²) DFT with the same unitary normalization.
    fn naive_dft(grid: &Grid, data: &[Complex64]) -> Vec<Complex64> {
        let n = grid.n() as f64;
        let len = grid.len();
        (0..len)
            .map(|kf| {
                let k = grid.unflatten(kf);
                let mut acc = Complex64::new(0.0, 0.0);
                for (jf, v) in data.iter().enumerate() {
                    let j = grid.unflatten(jf);
                    let phase: f64 = (0..grid.dim())
                        .map(|a| (k[a] * j[a]) as f64)
                        .sum::<f64>()
                        * (-2.0 * PI / n);
                    acc += v * Complex64::from_polar(1.0, phase);
                }
                acc / (len as f64).sqrt()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_in_every_dimension() {
        for dim in 1..=3 {
            let grid = Grid::new(dim, 8, 1.0).unwrap();
            let data: Vec<Complex64> = (0..grid.len())
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let expected = naive_dft(&grid, &data);
            let mut got = data.clone();
            transform(&grid, &mut got, FftDirection::Forward);
            for (a, b) in got.iter().zip(&expected) {
                assert!((a - b).norm() < 1e-12, "dim {dim}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        let grid = Grid::new(3, 16, 1.0).unwrap();
        let data: Vec<Complex64> = (0..grid.len())
            .map(|i| Complex64::new((i as f64).sqrt(), -(i as f64 * 0.1).sin()))
            .collect();
        let mut work = data.clone();
        transform(&grid, &mut work, FftDirection::Forward);
        transform(&grid, &mut work, FftDirection::Inverse);
        for (a, b) in work.iter().zip(&data) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
