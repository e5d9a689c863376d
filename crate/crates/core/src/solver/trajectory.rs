use crate::diagnostics::DiagnosticSeries;
use crate::error::{Error, Result};
use crate::spectral::{Grid, Repr, SpectralField};

use super::SolverConfig;

/// Time-ordered physical-space snapshots with their scalar diagnostics.
#[derive(Clone, Debug)]
pub struct Trajectory {
    config: SolverConfig,
    times: Vec<f64>,
    snapshots: Vec<SpectralField>,
    channels: DiagnosticSeries,
}

impl Trajectory {
    /// Builds a trajectory and evaluates its diagnostic channels.
    ///
    /// Times must start at 0 and increase strictly; all snapshots must live on
    /// `config.grid`.
    pub fn new(config: SolverConfig, times: Vec<f64>, snapshots: Vec<SpectralField>) -> Result<Self> {
        if times.is_empty() || times.len() != snapshots.len() {
            return Err(Error::Precondition(format!(
                "{} times for {} snapshots",
                times.len(),
                snapshots.len()
            )));
        }
        if times[0] != 0.0 {
            return Err(Error::Precondition(format!("first time is {}, not 0", times[0])));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Precondition("times must increase strictly".into()));
        }
        if snapshots.iter().any(|s| *s.grid() != config.grid) {
            return Err(Error::GridMismatch);
        }
        let snapshots: Vec<SpectralField> = snapshots
            .into_iter()
            .map(|s| s.into_repr(Repr::Physical))
            .collect();
        let channels = DiagnosticSeries::compute(&times, &snapshots, config.n_cut, config.s);
        Ok(Trajectory {
            config,
            times,
            snapshots,
            channels,
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn grid(&self) -> &Grid {
        &self.config.grid
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Snapshots, all in physical representation.
    pub fn snapshots(&self) -> &[SpectralField] {
        &self.snapshots
    }

    pub fn channels(&self) -> &DiagnosticSeries {
        &self.channels
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn initial(&self) -> &SpectralField {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &SpectralField {
        self.snapshots.last().expect("trajectory is never empty")
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().expect("trajectory is never empty")
    }

    /// New trajectory over the same times with every snapshot transformed by `f`.
    pub fn map_snapshots(&self, f: impl Fn(&SpectralField) -> SpectralField) -> Result<Trajectory> {
        let snaps = self.snapshots.iter().map(f).collect();
        Trajectory::new(self.config.clone(), self.times.clone(), snaps)
    }
}
