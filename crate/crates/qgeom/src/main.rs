use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qgeom::{Command, Format, JobConfig};

/// Spectra and algebra checks for spin-network states on embedded graphs.
#[derive(Debug, Parser)]
#[command(name = "qgeom", version)]
struct Cli {
    #[arg(long, value_enum)]
    command: Command,
    /// JSON document with graph, surfaces, states and parameters.
    #[arg(long)]
    input: PathBuf,
    /// Immirzi parameter.
    #[arg(long)]
    gamma: Option<f64>,
    /// Volume constant.
    #[arg(long)]
    c: Option<f64>,
    /// Twice the largest edge spin.
    #[arg(long)]
    max_spin: Option<i32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = JobConfig {
        command: cli.command,
        input: cli.input,
        gamma: cli.gamma,
        c: cli.c,
        max_spin: cli.max_spin,
        seed: cli.seed,
        samples: cli.samples,
        output: cli.output,
        format: cli.format,
    };
    match qgeom::run(&config) {
        Ok(out) => {
            if config.output.is_none() {
                print!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qgeom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
