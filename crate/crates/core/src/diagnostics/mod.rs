//! Conserved quantities, mixed norms, interval partitions and increment
//! measurements.

mod functionals;
mod increments;
mod norms;
mod partition;
mod series;
mod window;

pub use functionals::{
    energy, kinetic_energy, lq_norm, mass, modified_energy, modified_kinetic_energy,
    potential_energy, sobolev_norm,
};
pub use increments::{energy_increment, kinetic_increment, morawetz_ratio, series_increment, MorawetzRatio};
pub use norms::{
    default_pairs, dual_exponent, is_admissible, mixed_norm, pointwise_magnitude, s0_norm,
    s0_norm_with, spatial_norm, temporal_norm, Derivative, NormSpec,
};
pub use partition::{
    double_layer_partition, group_into_big, partition_by_l4, partition_series, BigLayer,
    IntervalPartition,
};
pub use series::{validate_diagnostics_csv, DiagnosticSeries, CSV_HEADER};
pub use window::{check_interval, window_integral, window_max, window_samples};
