use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use esfr_core::harness::{run_energy_study, run_ooa_study, run_sbp_check, ExperimentConfig, Study};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Energy,
    Ooa,
    SbpCheck,
}

impl From<Command> for Study {
    fn from(c: Command) -> Self {
        match c {
            Command::Energy => Study::Energy,
            Command::Ooa => Study::Ooa,
            Command::SbpCheck => Study::SbpCheck,
        }
    }
}

/// Energy, convergence, and operator-identity studies for split-form ESFR
/// schemes on the 1D Burgers equation.
#[derive(Debug, Parser)]
#[command(name = "esfr-split", version)]
struct Cli {
    #[arg(value_enum)]
    study: Command,

    /// Flat key=value config file; study defaults apply to missing keys.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Override one config key, e.g. `--set degrees=4`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
}

fn run(cli: Cli) -> Result<()> {
    let study: Study = cli.study.into();
    let cfg = ExperimentConfig::load(study, cli.config.as_deref(), &cli.set).context("invalid configuration")?;
    let written = match study {
        Study::Energy => {
            let s = run_energy_study(&cfg)?;
            for r in s.runs.iter().filter(|r| r.diverged_at.is_some()) {
                eprintln!(
                    "diverged: {} {} {} p={} at t={}",
                    r.case.label(),
                    r.flux,
                    r.quadrature,
                    r.p,
                    r.diverged_at.unwrap_or(f64::NAN)
                );
            }
            s.write(&cli.out, cfg.write_series, cfg.write_dat)?
        }
        Study::Ooa => run_ooa_study(&cfg)?.write(&cli.out, cfg.write_dat)?,
        Study::SbpCheck => run_sbp_check(&cfg)?.write(&cli.out, cfg.write_dat)?,
    };
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
