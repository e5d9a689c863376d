//! Seeded experiments that measure estimates numerically and fit power laws.

mod bilinear;
mod bounds;
mod data;
mod fit;
mod random;
mod report;
mod sweeps;

pub use fit::{fit_power_law, PowerLawFit};
pub use random::{RandomFieldSpec, Support};
pub use report::{spread, validate_report_json, median_deviation, Band, EstimateReport, SweepPoint};
pub use bilinear::{
    bilinear_experiment, bilinear_norm, separable_bilinear, BilinearSetup, Packet, SeparableData,
    BILINEAR_BAND,
};
pub use bounds::{
    i_operator_ratios, lwp_check, lwp_check_on, nonlinear_band_check, strichartz_check,
    verify_i_operator_bounds, IOperatorRatios, I_BOUND_STABILITY, ROUGHNESS_MARGIN,
};
pub use data::{normalize_gradient, InitialData};
pub use sweeps::{
    almost_conservation_sweep, almost_conservation_sweep_on, morawetz_refinement, scattering_profile,
    smoothing_sweep, smoothing_sweep_on, MorawetzRefinement, ScatteringProfile,
    ALMOST_CONSERVATION_BAND, CONSERVATION_CONTROL, MORAWETZ_STABILITY, SMOOTHING_BAND,
};
