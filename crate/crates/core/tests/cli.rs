use std::path::Path;
use std::process::{Command, Output};

use nls_lab::cli::{validate_manifest, RunConfig, DIAGNOSTICS_CSV, MANIFEST_JSON, PARTITION_JSON, REPORT_CSV, REPORT_JSON};
use nls_lab::diagnostics::validate_diagnostics_csv;
use nls_lab::lab::validate_report_json;
use serde_json::Value;

const BASE: &str = r#"
experiment = "simulate"
seed = 3

[grid]
dim = 2
n = 32
box_length = 12.0

[solver]
dt = 0.002
t_end = 0.2
stride = 5

[spectral]
epsilon = 0.5
n_list = [1.0, 2.0, 4.0, 8.0]
m_list = [1.0, 2.0, 4.0]

[data]
kind = "gaussian"
amplitude = 0.5
width = 1.0
"#;

fn nlslab(dir: &Path, config: &str, args: &[&str]) -> Output {
    let path = dir.join("run.toml");
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_nlslab"))
        .arg("--config")
        .arg(&path)
        .arg("--out")
        .arg(dir.join("out"))
        .args(args)
        .env_remove("NLSLAB_SOLVER__DT")
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join("out").join(name)).unwrap()
}

#[test]
fn simulate_writes_valid_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlslab(dir.path(), BASE, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(validate_diagnostics_csv(&read(dir.path(), DIAGNOSTICS_CSV)).unwrap(), 21);
    validate_report_json(&read(dir.path(), REPORT_JSON)).unwrap();
    let manifest = read(dir.path(), MANIFEST_JSON);
    validate_manifest(&manifest).unwrap();
    let m: Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(m["seed"], 3);
    assert_eq!(m["experiment"], "simulate");
    assert!(m["phi_definition"].as_str().unwrap().starts_with("phi(r)"));
    assert!(read(dir.path(), REPORT_CSV).starts_with("name,"));
}

#[test]
fn every_experiment_dispatches() {
    let random = r#"
[data]
kind = "random"
field = { support = { kind = "annulus", lo = 1.0, hi = 4.0 }, amplitude = 0.3 }
"#;
    let strichartz = BASE.replace(
        "[data]\nkind = \"gaussian\"\namplitude = 0.5\nwidth = 1.0\n",
        &format!("[sweep]\ntrials = 3\nsamples = 8\n{random}"),
    );
    for (experiment, config) in [
        ("lwp", BASE.to_string()),
        ("smoothing", BASE.to_string()),
        ("bands", BASE.to_string()),
        ("scatter", BASE.to_string()),
        ("partition", BASE.to_string()),
        ("verify-i", BASE.to_string()),
        ("strichartz", strichartz),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out = nlslab(dir.path(), &config, &["--experiment", experiment]);
        assert!(
            matches!(out.status.code(), Some(0) | Some(2)),
            "{experiment}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        validate_report_json(&read(dir.path(), REPORT_JSON)).unwrap();
        if experiment == "partition" {
            let p: Value = serde_json::from_str(&read(dir.path(), PARTITION_JSON)).unwrap();
            assert!(p["breakpoints"].as_array().unwrap().len() >= 2);
        }
    }
}

#[test]
fn band_failure_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlslab(dir.path(), BASE, &["--experiment", "almost-conservation"]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_str(&read(dir.path(), REPORT_JSON)).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn errors_exit_with_one_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlslab(dir.path(), BASE, &["--set", "spectral.s=0.4"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "out_of_range");
    assert!(err["message"].as_str().unwrap().contains("s ∈ (1/2, 1)"));

    let out = nlslab(dir.path(), &format!("{BASE}\nunknown_key = 1\n"), &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = nlslab(dir.path(), &BASE.replace("dt = 0.002", "dt = 0.002\nsteps = 3"), &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn overrides_from_flags_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, BASE).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nlslab"))
        .arg("--config")
        .arg(&path)
        .args(["--set", "solver.stride=10", "--seed", "17", "--format", "json"])
        .env("NLSLAB_OUT", dir.path().join("out"))
        .env("NLSLAB_SOLVER__T_END", "0.1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let m: Value = serde_json::from_str(&read(dir.path(), MANIFEST_JSON)).unwrap();
    assert_eq!(m["seed"], 17);
    assert_eq!(m["config"]["solver"]["stride"], 10);
    assert_eq!(m["config"]["solver"]["t_end"], 0.1);
    assert!(!dir.path().join("out").join(REPORT_CSV).exists());
}

#[test]
fn reruns_are_bit_identical() {
    let config = BASE.replace("experiment = \"simulate\"", "experiment = \"verify-i\"");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    nlslab(a.path(), &config, &[]);
    nlslab(b.path(), &config, &[]);
    assert_eq!(read(a.path(), REPORT_JSON), read(b.path(), REPORT_JSON));
}

#[test]
fn config_round_trips() {
    let cfg = RunConfig::from_toml(BASE).unwrap();
    assert_eq!(RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg);
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        RunConfig::load(&path, &[]).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 7);
}

fn schema_required(name: &str) -> Vec<String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
}

#[test]
fn artifacts_carry_every_schema_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = nlslab(dir.path(), BASE, &["--experiment", "partition"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for (schema, artifact) in [
        ("report.schema.json", REPORT_JSON),
        ("partition.schema.json", PARTITION_JSON),
        ("manifest.schema.json", MANIFEST_JSON),
    ] {
        let v: Value = serde_json::from_str(&read(dir.path(), artifact)).unwrap();
        for key in schema_required(schema) {
            assert!(v.get(&key).is_some(), "{artifact} lacks {key}");
        }
    }
}
