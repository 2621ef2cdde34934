use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qlevels_core::{PeakKind, Preset};
use qlevels_cli::config::parse_mode;
use qlevels_cli::{pipeline, CliError, Overrides, ScenarioConfig};

/// Recover Ising energy levels from the spectrum of a single time-evolved
/// X-string expectation value.
#[derive(Parser)]
#[command(name = "qlevels", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory (overrides the config).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// RNG seed for shot sampling.
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Shots per time point; 0 means exact expectation values.
    #[arg(long, global = true, value_name = "INT")]
    shots: Option<u32>,
    /// Per-qubit symmetric readout flip probability.
    #[arg(long = "readout-flip", global = true, value_name = "FLOAT")]
    readout_flip: Option<f64>,
    /// Peak interpretation: `level` (E = ω/2) or `transition`.
    #[arg(long, global = true, value_name = "level|transition", value_parser = mode_arg)]
    mode: Option<PeakKind>,
}

fn mode_arg(s: &str) -> Result<PeakKind, String> {
    parse_mode(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the protocol, transform and write peaks and levels.
    Run {
        /// TOML scenario file or preset name.
        config: String,
    },
    /// Enumerate the exact spectrum of the scenario Hamiltonian.
    Oracle { config: String },
    /// Compare the detected levels of `run` against `oracle`.
    Compare { config: String },
    /// List the built-in scenarios.
    PresetList,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let overrides = Overrides {
        out: cli.out,
        seed: cli.seed,
        shots: cli.shots,
        readout_flip: cli.readout_flip,
        mode: cli.mode,
    };
    match cli.command {
        Command::PresetList => {
            for p in Preset::ALL {
                println!("{:<14} {}", p.name(), p.description());
            }
            Ok(())
        }
        Command::Run { config } => {
            let cfg = ScenarioConfig::load(&config, &overrides)?;
            let outcome = pipeline::run_scenario(&cfg)?;
            print!("{}", pipeline::run_summary(&cfg, &outcome));
            Ok(())
        }
        Command::Oracle { config } => {
            let cfg = ScenarioConfig::load(&config, &overrides)?;
            let outcome = pipeline::run_oracle(&cfg)?;
            print!("{}", pipeline::oracle_summary(&outcome));
            Ok(())
        }
        Command::Compare { config } => {
            let cfg = ScenarioConfig::load(&config, &overrides)?;
            let report = pipeline::compare(&cfg)?;
            print!("{}", report.text);
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!(
                    "{} missed, {} spurious, {} assertion failures",
                    report.missed.len(),
                    report.spurious.len(),
                    report.assertion_failures.len()
                )))
            }
        }
    }
}
