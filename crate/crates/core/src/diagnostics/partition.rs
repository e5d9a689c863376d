//! Greedy partition of a time window into intervals of small `L⁴ₜₓ` norm.

use serde::{Deserialize, Serialize};

use super::window::window_samples;
use crate::error::{Error, Result};
use crate::solver::Trajectory;

const BUDGET_SLACK: f64 = 1e-12;

/// Grouping of little intervals into big ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigLayer {
    pub little_per_big: usize,
    /// Subset of the little breakpoints, including both window ends.
    pub breakpoints: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub epsilon: f64,
    /// `t1 = b_0 < b_1 < … < b_K = t2`.
    pub breakpoints: Vec<f64>,
    /// `‖u‖_{L⁴ₜₓ}` on each little interval.
    pub l4_norms: Vec<f64>,
    /// Intervals made of a single cell that alone exceeds `ε⁴`.
    pub over_budget: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big: Option<BigLayer>,
}

impl IntervalPartition {
    pub fn len(&self) -> usize {
        self.l4_norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l4_norms.is_empty()
    }

    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.breakpoints.windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn big_intervals(&self) -> Option<Vec<(f64, f64)>> {
        self.big
            .as_ref()
            .map(|b| b.breakpoints.windows(2).map(|w| (w[0], w[1])).collect())
    }

    /// True when every interval not flagged over budget has norm at most
    /// `ε(1 + rel_tol)`.
    pub fn respects_budget(&self, rel_tol: f64) -> bool {
        self.l4_norms
            .iter()
            .zip(&self.over_budget)
            .all(|(&n, &over)| over || n <= self.epsilon * (1.0 + rel_tol))
    }

    /// Breakpoints run from `t1` to `t2` strictly increasing.
    pub fn tiles(&self, interval: (f64, f64)) -> bool {
        let b = &self.breakpoints;
        b.len() == self.len() + 1
            && b.first() == Some(&interval.0)
            && b.last() == Some(&interval.1)
            && b.windows(2).all(|w| w[0] < w[1])
    }

    /// Big breakpoints are a subset of the little ones, with the same ends.
    pub fn is_nested(&self) -> bool {
        match &self.big {
            None => true,
            Some(big) => {
                big.breakpoints.first() == self.breakpoints.first()
                    && big.breakpoints.last() == self.breakpoints.last()
                    && big.breakpoints.iter().all(|t| self.breakpoints.contains(t))
            }
        }
    }
}

/// Greedy left-to-right partition of `interval` driven by the integrand
/// `h(t) = ‖u(t)‖⁴_{L⁴ₓ}`, sampled at `times`. Cuts land on snapshot times.
pub fn partition_series(
    times: &[f64],
    l4x_fourth: &[f64],
    epsilon: f64,
    interval: (f64, f64),
) -> Result<IntervalPartition> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            bound: "epsilon > 0",
        });
    }
    let samples = window_samples(times, l4x_fourth, interval)?;
    let budget = epsilon.powi(4);
    let cap = budget * (1.0 + BUDGET_SLACK);

    let mut breakpoints = vec![samples[0].0];
    let mut fourth = Vec::new();
    let mut over_budget = Vec::new();
    let mut acc = 0.0;
    for w in samples.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        let cell = 0.5 * (w[0].1 + w[1].1) * (b - a);
        if acc + cell <= cap {
            acc += cell;
            continue;
        }
        if *breakpoints.last().unwrap() < a {
            breakpoints.push(a);
            fourth.push(acc);
            over_budget.push(false);
        }
        if cell > cap {
            breakpoints.push(b);
            fourth.push(cell);
            over_budget.push(true);
            acc = 0.0;
        } else {
            acc = cell;
        }
    }
    let end = samples.last().unwrap().0;
    if *breakpoints.last().unwrap() < end || fourth.is_empty() {
        breakpoints.push(end);
        fourth.push(acc);
        over_budget.push(false);
    }
    Ok(IntervalPartition {
        epsilon,
        breakpoints,
        l4_norms: fourth.iter().map(|v: &f64| v.powf(0.25)).collect(),
        over_budget,
        big: None,
    })
}

/// Partition of `interval` with `‖u‖_{L⁴ₜₓ(J)} ≤ ε` on every interval `J`.
pub fn partition_by_l4(traj: &Trajectory, epsilon: f64, interval: (f64, f64)) -> Result<IntervalPartition> {
    let h: Vec<f64> = traj.channels().l4x.iter().map(|v| v.powi(4)).collect();
    partition_series(traj.times(), &h, epsilon, interval)
}

/// Groups consecutive little intervals into big intervals of
/// `little_per_big` each; the last group may be partial.
pub fn group_into_big(mut little: IntervalPartition, little_per_big: usize) -> Result<IntervalPartition> {
    if little_per_big == 0 {
        return Err(Error::Precondition("little_per_big must be at least 1".into()));
    }
    let b = &little.breakpoints;
    let mut big: Vec<f64> = b.iter().step_by(little_per_big).copied().collect();
    if big.last() != b.last() {
        big.push(*b.last().unwrap());
    }
    little.big = Some(BigLayer {
        little_per_big,
        breakpoints: big,
    });
    Ok(little)
}

/// Two-level partition of the whole trajectory span.
pub fn double_layer_partition(
    traj: &Trajectory,
    epsilon: f64,
    little_per_big: usize,
) -> Result<IntervalPartition> {
    let little = partition_by_l4(traj, epsilon, (0.0, traj.t_end()))?;
    group_into_big(little, little_per_big)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(cells: usize, per_cell: f64) -> (Vec<f64>, Vec<f64>) {
        let dt = 0.01;
        let times: Vec<f64> = (0..=cells).map(|i| i as f64 * dt).collect();
        let h = vec![per_cell / dt; cells + 1];
        (times, h)
    }

    #[test]
    fn three_and_a_half_budgets_give_four_intervals() {
        let eps: f64 = 0.3;
        let (times, h) = uniform(35, 0.1 * eps.powi(4));
        let p = partition_series(&times, &h, eps, (0.0, times[35])).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.tiles((0.0, times[35])));
        assert!(p.respects_budget(1e-9));
        assert!((p.l4_norms[3] - eps * 0.5f64.powf(0.25)).abs() < 1e-9);
    }

    #[test]
    fn large_epsilon_gives_one_interval() {
        let (times, h) = uniform(20, 0.01);
        let p = partition_series(&times, &h, 10.0, (0.0, 0.2)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.breakpoints, vec![0.0, 0.2]);
    }

    #[test]
    fn oversized_cell_is_flagged_singleton() {
        let times = [0.0, 1.0, 2.0, 3.0];
        let h = [0.0, 0.0, 10.0, 0.0];
        let p = partition_series(&times, &h, 1.0, (0.0, 3.0)).unwrap();
        assert!(p.tiles((0.0, 3.0)));
        assert_eq!(p.over_budget.iter().filter(|&&o| o).count(), 2);
        assert!(p.respects_budget(0.0));
    }

    #[test]
    fn grouping() {
        let eps: f64 = 0.5;
        let (times, h) = uniform(80, 0.1 * eps.powi(4));
        let p = partition_series(&times, &h, eps, (0.0, times[80])).unwrap();
        assert_eq!(p.len(), 8);
        let two = group_into_big(p.clone(), 4).unwrap();
        assert_eq!(two.big_intervals().unwrap().len(), 2);
        assert!(two.is_nested());
        let same = group_into_big(p.clone(), 1).unwrap();
        assert_eq!(same.big.unwrap().breakpoints, p.breakpoints);
        let partial = group_into_big(p.clone(), 3).unwrap();
        assert_eq!(partial.big_intervals().unwrap().len(), 3);
        assert!(group_into_big(p, 0).is_err());
    }

    #[test]
    fn sub_window_partition() {
        let eps: f64 = 0.5;
        let (times, h) = uniform(100, 0.1 * eps.powi(4));
        let p = partition_series(&times, &h, eps, (0.105, 0.555)).unwrap();
        assert!(p.tiles((0.105, 0.555)));
        assert!(p.respects_budget(1e-9));
    }
}
