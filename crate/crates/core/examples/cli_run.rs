//! Driving an experiment through the same config path as the `nlslab`
//! binary, writing artifacts to a temporary directory.

use nls_lab::cli::{execute, RunConfig};

const CONFIG: &str = r#"
experiment = "partition"
seed = 1

[grid]
dim = 2
n = 32
box_length = 12.0

[solver]
dt = 0.002
t_end = 0.5
stride = 5

[spectral]
epsilon = 0.6
little_per_big = 2

[data]
kind = "gaussian"
amplitude = 1.0
width = 1.0
"#;

fn main() -> nls_lab::Result<()> {
    let mut cfg = RunConfig::from_toml(CONFIG)?;
    cfg.output.dir = std::env::temp_dir().join("nlslab-example");
    let outcome = execute(&cfg)?;
    println!("pass: {}", outcome.pass);
    for p in &outcome.outputs {
        println!("wrote {}", p.display());
    }
    println!("{:?}", outcome.report.metrics);
    Ok(())
}
