use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use delta_riemann::cli::{self, exit, Command};
use delta_riemann::config::JobConfig;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Classify,
    Solve,
    Profile,
    Residual,
    LimitStudy,
    Fvm,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Classify => Command::Classify,
            Cmd::Solve => Command::Solve,
            Cmd::Profile => Command::Profile,
            Cmd::Residual => Command::Residual,
            Cmd::LimitStudy => Command::LimitStudy,
            Cmd::Fvm => Command::Fvm,
        }
    }
}

/// Exact Riemann solutions with friction: classification, closed forms, weak-form
/// residuals, parameter limits and finite-volume comparison.
#[derive(Debug, Parser)]
#[command(name = "delta-riemann", version)]
struct Args {
    command: Cmd,
    /// Job description (JSON, "schema": 1). A manifest.json from an earlier run also works.
    #[arg(long)]
    config: PathBuf,
    /// Directory for result.json, CSV tables and manifest.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 4 when the command's checks fail.
    #[arg(long)]
    assert: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::CONFIG as u8 } else { 0 });
        }
    };
    let run = || -> delta_riemann::Result<bool> {
        let cfg = JobConfig::load(&args.config)?;
        let out = cli::execute(args.command.into(), &cfg)?;
        print!("{}", cli::to_json(&out.result));
        if let Some(dir) = &args.out {
            cli::write_outputs(&out, &cfg, dir)?;
        }
        Ok(out.verified.unwrap_or(true))
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) if args.assert => {
            eprintln!("error: verification failed");
            ExitCode::from(exit::VERIFICATION as u8)
        }
        Ok(false) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
