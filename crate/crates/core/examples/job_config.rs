//! Drives the command layer from a JSON job description, as the binary does.

use delta_riemann::cli::{execute, to_json, Command};
use delta_riemann::config::JobConfig;

const JOB: &str = r#"{
  "schema": 1,
  "system": "kk",
  "left": {"rho": 1.0, "u": 2.0},
  "right": {"rho": 1.0, "u": 0.0},
  "mu": 1.0,
  "friction": {"kind": "constant", "a": 1.0},
  "t": 1.0
}"#;

fn main() -> delta_riemann::Result<()> {
    let cfg = JobConfig::from_json(JOB)?;
    for cmd in [Command::Classify, Command::Solve, Command::Residual] {
        let out = execute(cmd, &cfg)?;
        println!("== {cmd}\n{}", to_json(&out.result));
    }
    Ok(())
}
