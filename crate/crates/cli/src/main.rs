use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nonclass::classify::VerdictConfig;
use nonclass_cli::build::{build_state, max_cutoff_from_env};
use nonclass_cli::report::{analyze_state, render};
use nonclass_cli::spec::{parse_state_spec, parse_sweep_spec};
use nonclass_cli::sweep::{render_csv, run_sweep};
use nonclass_cli::{selftest, CliError, CliResult};

#[derive(Parser)]
#[command(name = "nonclass", version, about = "Nonclassicality criteria for two-mode light")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one state spec and print a report.
    Analyze {
        spec: PathBuf,
        /// Random mode vectors tried by the projection scan.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sweep one parameter and write a CSV table.
    Sweep {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in invariant and oracle checks.
    Selftest,
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<bool> {
    let cap = max_cutoff_from_env();
    match cli.command {
        Command::Analyze { spec, samples, seed } => {
            let spec = parse_state_spec(&read(&spec)?)?;
            let mut config = VerdictConfig::default();
            if let Some(n) = samples {
                config.samples = n;
            }
            if let Some(s) = seed {
                config.seed = s;
            }
            let an = analyze_state(build_state(&spec, cap)?, &config)?;
            print!("{}", render(&an));
            Ok(true)
        }
        Command::Sweep { spec, out } => {
            let spec = parse_sweep_spec(&read(&spec)?)?;
            let rows = run_sweep(&spec, cap)?;
            std::fs::write(&out, render_csv(&rows))?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(true)
        }
        Command::Selftest => {
            let checks = selftest::run_selftest();
            print!("{}", selftest::render(&checks));
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
