use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use torsion::{acceptance, calibration, run, write_csv, write_json, Config};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Mellin contributions along a highest-weight ray, with growth fits.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// JSON orbifold and m-range description
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Run the acceptance suite and exit nonzero on any failure
    #[arg(long)]
    check: bool,
    /// Worker threads (all cores by default)
    #[arg(long)]
    jobs: Option<usize>,
}

fn check() -> bool {
    let outcomes = acceptance::run_all();
    for outcome in &outcomes {
        println!("{outcome}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    failed == 0
}

fn report(cli: &Cli) -> anyhow::Result<()> {
    let Some(path) = &cli.config else {
        bail!("--config is required unless --check is given");
    };
    if cli.jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    let config = Config::load(path)?;
    let orb = config.orbifold()?;
    let report = run(&orb, config.m_min, config.m_max, cli.jobs)?;
    let out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let out = BufWriter::new(out);
    match cli.format {
        Format::Csv => write_csv(&report, config.n, out)?,
        Format::Json => write_json(&report, calibration()?.value, out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.check {
        return if check() { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }
    match report(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
