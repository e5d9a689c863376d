use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::default_pairs;
use crate::error::{Error, Result};
use crate::lab::{BilinearSetup, InitialData, RandomFieldSpec};
use crate::solver::SolverConfig;
use crate::spectral::{check_s, Grid};

/// Prefix of the environment variables that override config keys, e.g.
/// `NLSLAB_SOLVER__DT=0.001` sets `solver.dt`.
pub const ENV_PREFIX: &str = "NLSLAB_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Simulate,
    VerifyI,
    Strichartz,
    Bilinear,
    Lwp,
    Smoothing,
    AlmostConservation,
    Bands,
    Scatter,
    Partition,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Simulate => "simulate",
            Experiment::VerifyI => "verify-i",
            Experiment::Strichartz => "strichartz",
            Experiment::Bilinear => "bilinear",
            Experiment::Lwp => "lwp",
            Experiment::Smoothing => "smoothing",
            Experiment::AlmostConservation => "almost-conservation",
            Experiment::Bands => "bands",
            Experiment::Scatter => "scatter",
            Experiment::Partition => "partition",
        }
    }

    /// True when the experiment evolves the configured data.
    pub fn needs_run(self) -> bool {
        !matches!(self, Experiment::VerifyI | Experiment::Strichartz | Experiment::Bilinear)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Both,
}

impl Format {
    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }

    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverParams {
    pub dt: f64,
    pub t_end: f64,
    pub stride: usize,
    pub nonlinear: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            dt: 1e-3,
            t_end: 1.0,
            stride: 1,
            nonlinear: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectralParams {
    pub s: f64,
    /// I-operator cutoff of the run channels; the grid corner when absent.
    pub n_cut: Option<f64>,
    pub n_list: Vec<f64>,
    pub m_list: Vec<f64>,
    pub epsilon: f64,
    pub little_per_big: usize,
    /// Start of the scattering tail; half the run when absent.
    pub tail_start: Option<f64>,
    /// Admissible pairs of the sampled S⁰ norm; the dimension default when empty.
    pub pairs: Vec<[f64; 2]>,
}

impl Default for SpectralParams {
    fn default() -> Self {
        SpectralParams {
            s: 0.76,
            n_cut: None,
            n_list: vec![2.0, 4.0, 8.0, 16.0],
            m_list: vec![1.0, 2.0, 4.0, 8.0, 16.0],
            epsilon: 0.1,
            little_per_big: 4,
            tail_start: None,
            pairs: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepParams {
    pub trials: usize,
    pub samples: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams { trials: 10, samples: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputParams {
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for OutputParams {
    fn default() -> Self {
        OutputParams {
            dir: PathBuf::from("nlslab-out"),
            format: Format::Both,
        }
    }
}

/// Everything one `nlslab` invocation needs. The run `seed` is the single
/// source of randomness: it replaces the seeds inside `data` and `bilinear`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    #[serde(default)]
    pub seed: u64,
    pub grid: Grid,
    #[serde(default)]
    pub solver: SolverParams,
    #[serde(default)]
    pub spectral: SpectralParams,
    #[serde(default = "default_data")]
    pub data: InitialData,
    /// Rescale the data so that `‖∇u₀‖_{L²}` equals this value before running.
    #[serde(default)]
    pub gradient_norm: Option<f64>,
    #[serde(default)]
    pub sweep: SweepParams,
    #[serde(default)]
    pub bilinear: BilinearSetup,
    #[serde(default)]
    pub output: OutputParams,
}

fn default_data() -> InitialData {
    InitialData::Gaussian { amplitude: 0.5, width: 1.0 }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads `path`, applies `NLSLAB_*` environment overrides and then the
    /// `key=value` overrides, in that order, and validates the result.
    pub fn load(path: &Path, sets: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut doc: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        for (key, value) in env_overrides() {
            set_key(&mut doc, &key, &value)?;
        }
        for s in sets {
            let (key, value) = s
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("override `{s}` is not key=value")))?;
            set_key(&mut doc, key.trim(), value.trim())?;
        }
        let text = toml::to_string(&doc).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        check_s(self.spectral.s)?;
        self.solver_config().validate()?;
        let sp = &self.spectral;
        if !(sp.epsilon > 0.0) {
            return Err(Error::OutOfRange { name: "epsilon", value: sp.epsilon, bound: "epsilon > 0" });
        }
        if sp.little_per_big == 0 {
            return Err(Error::OutOfRange { name: "little_per_big", value: 0.0, bound: "little_per_big >= 1" });
        }
        if let Some(n) = sp.n_cut {
            if !(n > 0.0) {
                return Err(Error::OutOfRange { name: "n_cut", value: n, bound: "n_cut > 0" });
            }
        }
        if let Some(g) = self.gradient_norm {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::OutOfRange { name: "gradient_norm", value: g, bound: "gradient_norm > 0" });
            }
        }
        if sp.n_list.iter().chain(&sp.m_list).any(|&n| !(n > 0.0)) {
            return Err(Error::Config("n_list and m_list entries must be positive".into()));
        }
        if self.sweep.trials == 0 || self.sweep.samples == 0 {
            return Err(Error::Config("sweep.trials and sweep.samples must be positive".into()));
        }
        let dim = self.grid.dim();
        for &[p, q] in &sp.pairs {
            if !crate::diagnostics::is_admissible(p, q, dim) {
                return Err(Error::NonAdmissible { p, q, dim });
            }
        }
        match self.experiment {
            Experiment::Bilinear => {
                self.bilinear_setup().validate()?;
            }
            Experiment::Strichartz => {
                self.random_field()?;
            }
            _ => {}
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::new(self.grid, self.solver.dt, self.solver.t_end)
            .with_stride(self.solver.stride)
            .with_epsilon(self.spectral.epsilon);
        cfg.s = self.spectral.s;
        if let Some(n) = self.spectral.n_cut {
            cfg.n_cut = n;
        }
        if !self.solver.nonlinear {
            cfg = cfg.linear();
        }
        cfg
    }

    /// The data description with the run seed substituted.
    pub fn seeded_data(&self) -> InitialData {
        match &self.data {
            InitialData::Random { field, envelope } => InitialData::Random {
                field: RandomFieldSpec { seed: self.seed, ..*field },
                envelope: *envelope,
            },
            other => other.clone(),
        }
    }

    pub fn random_field(&self) -> Result<RandomFieldSpec> {
        match self.seeded_data() {
            InitialData::Random { field, .. } => Ok(field),
            _ => Err(Error::Config(format!(
                "experiment `{}` needs random data (data.kind = \"random\")",
                self.experiment.name()
            ))),
        }
    }

    pub fn bilinear_setup(&self) -> BilinearSetup {
        BilinearSetup { seed: self.seed, ..self.bilinear.clone() }
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        if self.spectral.pairs.is_empty() {
            default_pairs(self.grid.dim())
        } else {
            self.spectral.pairs.iter().map(|&[p, q]| (p, q)).collect()
        }
    }

    pub fn tail_start(&self) -> f64 {
        self.spectral.tail_start.unwrap_or(0.5 * self.solver.t_end)
    }
}

fn env_overrides() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::env::vars()
        .filter_map(|(k, v)| {
            let rest = k.strip_prefix(ENV_PREFIX)?;
            rest.contains("__").then(|| (rest.to_lowercase().replace("__", "."), v))
        })
        .collect();
    out.sort();
    out
}

/// Sets the dotted `key` in `doc`, creating tables on the way. The value is
/// read as a TOML literal and falls back to a plain string.
pub fn set_key(doc: &mut toml::Table, key: &str, value: &str) -> Result<()> {
    let parsed: toml::Value = format!("v = {value}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(value.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Config(format!("malformed key `{key}`")));
    }
    let mut table = doc;
    for part in &parts[..parts.len() - 1] {
        let entry = table
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("`{part}` in `{key}` is not a table")))?;
    }
    table.insert(parts[parts.len() - 1].to_string(), parsed);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
experiment = "simulate"
[grid]
dim = 2
n = 64
box_length = 10.0
[solver]
dt = 1e-3
t_end = 1.0
"#;

    #[test]
    fn minimal_simulate_config() {
        let cfg = RunConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(cfg.experiment, Experiment::Simulate);
        assert_eq!(cfg.solver_config().n_steps(), 1000);
        let back = RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_s() {
        let unknown = format!("{MINIMAL}colour = 3\n");
        assert!(matches!(RunConfig::from_toml(&unknown), Err(Error::Config(_))));
        let nested = MINIMAL.replace("t_end = 1.0", "t_end = 1.0\nsteps = 4");
        assert!(RunConfig::from_toml(&nested).is_err());
        let bad = format!("{MINIMAL}[spectral]\ns = 0.4\n");
        let err = RunConfig::from_toml(&bad).unwrap_err().to_string();
        assert!(err.contains("s ∈ (1/2, 1)"), "{err}");
    }

    #[test]
    fn dotted_overrides() {
        let mut doc: toml::Table = MINIMAL.parse().unwrap();
        set_key(&mut doc, "solver.dt", "0.002").unwrap();
        set_key(&mut doc, "spectral.n_list", "[1, 2, 4]").unwrap();
        set_key(&mut doc, "experiment", "bands").unwrap();
        let cfg: RunConfig = toml::from_str(&toml::to_string(&doc).unwrap()).unwrap();
        assert_eq!(cfg.solver.dt, 0.002);
        assert_eq!(cfg.spectral.n_list, vec![1.0, 2.0, 4.0]);
        assert_eq!(cfg.experiment, Experiment::Bands);
        assert!(set_key(&mut doc, "solver..dt", "1").is_err());
    }

    #[test]
    fn run_seed_reaches_the_data() {
        let head = MINIMAL.replacen("experiment = \"simulate\"", "experiment = \"simulate\"\nseed = 9", 1);
        let text = format!(
            "{head}[data]\nkind = \"random\"\nfield = {{ support = {{ kind = \"annulus\", lo = 1.0, hi = 3.0 }}, amplitude = 0.2 }}\n"
        );
        let cfg = RunConfig::from_toml(&text).unwrap();
        assert_eq!(cfg.random_field().unwrap().seed, 9);
        assert_eq!(cfg.bilinear_setup().seed, 9);
    }
}
