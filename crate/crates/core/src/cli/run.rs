use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use super::config::{Experiment, RunConfig};
use crate::diagnostics::{
    double_layer_partition, energy, mass, morawetz_ratio, validate_diagnostics_csv, IntervalPartition,
};
use crate::error::{Error, Result};
use crate::lab::{
    almost_conservation_sweep_on, bilinear_experiment, lwp_check_on, nonlinear_band_check,
    normalize_gradient, scattering_profile, smoothing_sweep_on, strichartz_check,
    validate_report_json, verify_i_operator_bounds, EstimateReport,
};
use crate::solver::{evolve, write_checkpoint, Trajectory};
use crate::spectral::{M_DEFINITION, PHI_DEFINITION};

pub const REPORT_JSON: &str = "report.json";
pub const REPORT_CSV: &str = "report.csv";
pub const DIAGNOSTICS_CSV: &str = "diagnostics.csv";
pub const PARTITION_JSON: &str = "partition.json";
pub const MANIFEST_JSON: &str = "manifest.json";
pub const FINAL_STATE: &str = "final.nlsf";
pub const U_PLUS_STATE: &str = "u_plus.nlsf";

/// What a finished run produced.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub experiment: &'static str,
    pub pass: bool,
    pub outputs: Vec<PathBuf>,
    pub report: EstimateReport,
}

struct Artifacts {
    report: EstimateReport,
    trajectory: Option<Trajectory>,
    partition: Option<IntervalPartition>,
    extra_states: Vec<(&'static str, crate::spectral::SpectralField, f64)>,
}

impl Artifacts {
    fn report(report: EstimateReport) -> Self {
        Artifacts {
            report,
            trajectory: None,
            partition: None,
            extra_states: Vec::new(),
        }
    }
}

fn run_trajectory(cfg: &RunConfig) -> Result<Trajectory> {
    let mut u0 = cfg.seeded_data().build(cfg.grid)?;
    if let Some(g) = cfg.gradient_norm {
        u0 = normalize_gradient(u0, g);
    }
    evolve(&cfg.solver_config(), &u0)
}

fn compute(cfg: &RunConfig) -> Result<Artifacts> {
    let traj = if cfg.experiment.needs_run() {
        Some(run_trajectory(cfg)?)
    } else {
        None
    };
    let sp = &cfg.spectral;
    let pairs = cfg.pairs();
    let mut art = match (cfg.experiment, &traj) {
        (Experiment::VerifyI, _) => {
            Artifacts::report(verify_i_operator_bounds(cfg.grid, &sp.n_list, sp.s, cfg.sweep.trials, cfg.seed)?)
        }
        (Experiment::Strichartz, _) => Artifacts::report(strichartz_check(
            cfg.grid,
            &cfg.random_field()?,
            cfg.solver.t_end,
            cfg.sweep.trials,
            cfg.sweep.samples,
            &pairs,
        )?),
        (Experiment::Bilinear, _) => Artifacts::report(bilinear_experiment(&cfg.bilinear_setup())?),
        (_, None) => unreachable!("every remaining experiment evolves data"),
        (Experiment::Simulate, Some(t)) => {
            let mut r = EstimateReport::new("simulate", Vec::new());
            let (u0, u1) = (t.initial(), t.last());
            r.metric("mass_drift", (mass(u1) - mass(u0)).abs() / mass(u0).max(f64::MIN_POSITIVE));
            r.metric("energy_drift", (energy(u1) - energy(u0)).abs());
            r.metric("snapshots", t.len() as f64);
            if let Ok(m) = morawetz_ratio(t, (0.0, t.t_end())) {
                r.metric("morawetz_ratio", m.ratio);
            }
            let mut a = Artifacts::report(r);
            a.extra_states.push((FINAL_STATE, u1.clone(), t.t_end()));
            a
        }
        (Experiment::Lwp, Some(t)) => Artifacts::report(lwp_check_on(t, &pairs)?),
        (Experiment::Smoothing, Some(t)) => Artifacts::report(smoothing_sweep_on(t, &sp.n_list, &pairs)?),
        (Experiment::AlmostConservation, Some(t)) => {
            Artifacts::report(almost_conservation_sweep_on(t, &sp.n_list)?)
        }
        (Experiment::Bands, Some(t)) => Artifacts::report(nonlinear_band_check(t, &sp.m_list, &pairs)?),
        (Experiment::Scatter, Some(t)) => {
            let profile = scattering_profile(t, cfg.tail_start(), sp.s)?;
            let mut r = profile.report(sp.s);
            let t_end = t.t_end();
            let (tail, late) = (profile.residual_at(cfg.tail_start()), profile.residual_at(0.9 * t_end));
            if let (Some(a), Some(b)) = (tail, late) {
                r.metric("residual_tail_start", a);
                r.metric("residual_late", b);
                r.pass = b <= a;
            }
            let mut a = Artifacts::report(r);
            a.extra_states.push((U_PLUS_STATE, profile.u_plus, t_end));
            a
        }
        (Experiment::Partition, Some(t)) => {
            let p = double_layer_partition(t, sp.epsilon, sp.little_per_big)?;
            let mut r = EstimateReport::new("partition", Vec::new());
            let tiles = p.tiles((0.0, t.t_end()));
            let budget = p.respects_budget(1e-9);
            let nested = p.is_nested();
            r.metric("intervals", p.len() as f64);
            r.metric("big_intervals", p.big_intervals().map_or(0, |b| b.len()) as f64);
            r.metric("over_budget_cells", p.over_budget.iter().filter(|&&o| o).count() as f64);
            r.pass = tiles && budget && nested;
            let mut a = Artifacts::report(r);
            a.partition = Some(p);
            a
        }
    };
    art.trajectory = traj;
    Ok(art)
}

fn check_written(path: &Path, validate: impl Fn(&str) -> Result<()>) -> Result<()> {
    let text = fs::read_to_string(path)?;
    validate(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

/// Runs the configured experiment, writes its artifacts into the output
/// directory and validates them against their schemas.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let art = compute(cfg)?;
    let dir = &cfg.output.dir;
    fs::create_dir_all(dir)?;
    let mut outputs = Vec::new();
    let format = cfg.output.format;

    if format.json() {
        let path = dir.join(REPORT_JSON);
        fs::write(&path, art.report.to_json()?)?;
        check_written(&path, validate_report_json)?;
        outputs.push(path);
    }
    if format.csv() {
        let path = dir.join(REPORT_CSV);
        art.report.write_csv(BufWriter::new(File::create(&path)?))?;
        outputs.push(path);
    }
    if let Some(t) = &art.trajectory {
        let path = dir.join(DIAGNOSTICS_CSV);
        t.channels().write_csv(BufWriter::new(File::create(&path)?))?;
        check_written(&path, |s| validate_diagnostics_csv(s).map(|_| ()))?;
        outputs.push(path);
    }
    if let Some(p) = &art.partition {
        let path = dir.join(PARTITION_JSON);
        fs::write(&path, serde_json::to_string_pretty(p)?)?;
        check_written(&path, |s| serde_json::from_str::<IntervalPartition>(s).map(|_| ()).map_err(Error::from))?;
        outputs.push(path);
    }
    for (name, field, time) in &art.extra_states {
        let path = dir.join(name);
        write_checkpoint(BufWriter::new(File::create(&path)?), field, *time)?;
        outputs.push(path);
    }

    let manifest = json!({
        "experiment": cfg.experiment.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cfg.seed,
        "pass": art.report.pass,
        "config": cfg,
        "phi_definition": PHI_DEFINITION,
        "m_definition": M_DEFINITION,
        "outputs": outputs
            .iter()
            .map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect::<Vec<_>>(),
    });
    let path = dir.join(MANIFEST_JSON);
    fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
    check_written(&path, validate_manifest)?;
    outputs.push(path);

    Ok(Outcome {
        experiment: cfg.experiment.name(),
        pass: art.report.pass,
        outputs,
        report: art.report,
    })
}

pub fn validate_manifest(text: &str) -> Result<()> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    for key in ["experiment", "version", "seed", "pass", "config", "phi_definition", "m_definition", "outputs"] {
        if v.get(key).is_none() {
            return Err(Error::Schema(format!("manifest lacks `{key}`")));
        }
    }
    Ok(())
}
