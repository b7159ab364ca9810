use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use gw_decohere_cli::{run, CliError, Job, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "gw-decohere")]
#[command(about = "Matter-wave dephasing and critical radius under a stochastic gravitational-wave background")]
struct Args {
    /// Job to run
    #[arg(value_enum)]
    job: Job,

    /// JSON run configuration. Defaults to the reference silica setup.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output path. Prints to stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn execute(args: &Args) -> Result<(), CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_json(&fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let report = run(args.job, &cfg)?;
    for note in &report.notes {
        eprintln!("warning: {note}");
    }

    let mut buf = Vec::new();
    match args.format {
        Format::Csv => report.table.write_csv(&mut buf)?,
        Format::Json => report.table.write_json(&mut buf)?,
    }
    match &args.out {
        Some(path) => fs::write(path, &buf)?,
        None => io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
