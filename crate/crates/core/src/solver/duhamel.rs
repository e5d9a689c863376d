use super::{free_evolve, Trajectory};
use crate::error::Result;
use crate::spectral::{Repr, SpectralField};

/// Linear and nonlinear parts of a trajectory, `u = uˡ + uⁿˡ`, where
/// `uˡ(t) = e^{itΔ}u₀`.
#[derive(Clone, Debug)]
pub struct DuhamelSplit {
    pub linear_part: Trajectory,
    pub nonlinear_part: Trajectory,
}

pub fn duhamel_split(traj: &Trajectory) -> Result<DuhamelSplit> {
    let u0 = traj.initial();
    let linear: Vec<_> = traj.times().iter().map(|&t| free_evolve(u0, t)).collect();
    let nonlinear = if traj.config().nonlinearity_on {
        traj.snapshots()
            .iter()
            .zip(&linear)
            .map(|(u, l)| u.sub(l))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![SpectralField::zeros(*traj.grid(), Repr::Physical); traj.len()]
    };
    let mut lin_cfg = traj.config().clone();
    lin_cfg.nonlinearity_on = false;
    Ok(DuhamelSplit {
        linear_part: Trajectory::new(lin_cfg, traj.times().to_vec(), linear)?,
        nonlinear_part: Trajectory::new(traj.config().clone(), traj.times().to_vec(), nonlinear)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{evolve, SolverConfig};
    use crate::spectral::{Grid, SpectralField};
    use num_complex::Complex64;

    fn bump(grid: Grid, amp: f64) -> SpectralField {
        let c = grid.box_length() / 2.0;
        SpectralField::from_fn(grid, |x| {
            let r2: f64 = x.iter().map(|xi| (xi - c).powi(2)).sum();
            Complex64::new(amp * (-r2).exp(), 0.0)
        })
    }

    #[test]
    fn linear_run_has_no_nonlinear_part() {
        let grid = Grid::new(2, 32, 10.0).unwrap();
        let cfg = SolverConfig::new(grid, 0.01, 0.3).with_stride(5).linear();
        let traj = evolve(&cfg, &bump(grid, 1.0)).unwrap();
        let split = duhamel_split(&traj).unwrap();
        for s in split.nonlinear_part.snapshots() {
            assert!(s.l2_norm() < 1e-12);
        }
    }

    #[test]
    fn parts_sum_to_parent() {
        let grid = Grid::new(2, 32, 10.0).unwrap();
        let cfg = SolverConfig::new(grid, 0.01, 0.3).with_stride(5);
        let traj = evolve(&cfg, &bump(grid, 1.0)).unwrap();
        let split = duhamel_split(&traj).unwrap();
        for ((u, l), n) in traj
            .snapshots()
            .iter()
            .zip(split.linear_part.snapshots())
            .zip(split.nonlinear_part.snapshots())
        {
            let sum = l.add(n).unwrap();
            assert!(sum.distance(u).unwrap() / u.l2_norm() < 1e-12);
        }
    }
}
