//! `htea`: run (1+1) EA experiments, query exact runtimes and closed-form
//! bounds, and reproduce the jump-function runtime sweep as CSV.

mod args;
mod commands;
mod row;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use htea_core::engine::DEFAULT_BUDGET;

use commands::{Common, ExactArgs, Fig2Args, RunArgs, TheoryArgs};
use row::{sort_rows, write_csv, Row};

/// Largest relative deviation of a simulated mean from the exact value
/// tolerated by `--check`.
const CHECK_TOLERANCE: f64 = 0.15;
/// Rows with fewer runs are not checked.
const CHECK_MIN_RUNS: u64 = 1000;

#[derive(Debug, Parser)]
#[command(name = "htea", version, about = "(1+1) EA with heavy-tailed mutation: experiments, exact runtimes, bounds")]
struct Cli {
    /// Base seed; trial k of every cell uses a stream derived from (seed, k).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Evaluation budget per run, initial point included.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write CSV to this file instead of standard output.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Exit with status 2 if a simulated mean (runs >= 1000) deviates from
    /// the exact value by more than 15%.
    #[arg(long, global = true)]
    check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate the EA on a problem for one or more sizes and operators.
    Run(RunArgs),
    /// Exact expected runtime on a jump function.
    Exact(ExactArgs),
    /// Closed-form bounds and scales.
    Theory(TheoryArgs),
    /// Jump sweep comparing the 1/n rate with heavy-tailed mutation.
    Fig2(Fig2Args),
}

enum Outcome {
    Done,
    CheckFailed,
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("--csv {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_rows(cli: &Cli, mut rows: Vec<Row>) -> Result<Outcome> {
    sort_rows(&mut rows);
    write_csv(open_output(cli.csv.as_ref())?, &rows)?;
    if !cli.check {
        return Ok(Outcome::Done);
    }
    let mut failed = false;
    for row in rows.iter().filter(|r| r.runs >= CHECK_MIN_RUNS) {
        if let Some(dev) = row.oracle_deviation() {
            if dev > CHECK_TOLERANCE {
                failed = true;
                eprintln!(
                    "check failed: {} n={} m={} {} {}: mean {:?} vs exact {:?} ({:.1}% off)",
                    row.problem,
                    row.n,
                    row.m,
                    row.operator.as_str(),
                    row.rate_or_beta,
                    row.mean_evals,
                    row.oracle_exact,
                    100.0 * dev
                );
            }
        }
    }
    Ok(if failed { Outcome::CheckFailed } else { Outcome::Done })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let common = Common { seed: cli.seed, budget: cli.budget };
    match &cli.command {
        Command::Run(args) => emit_rows(cli, commands::run(args, common)?),
        Command::Fig2(args) => emit_rows(cli, commands::fig2(args, common)?),
        Command::Exact(args) => {
            let report = commands::exact(args, common)?;
            println!("{}", report.line);
            if cli.csv.is_some() {
                write_csv(open_output(cli.csv.as_ref())?, &[report.row])?;
            }
            Ok(Outcome::Done)
        }
        Command::Theory(args) => {
            let table = commands::theory(args)?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(open_output(cli.csv.as_ref())?);
            w.write_record(commands::THEORY_HEADER)?;
            for line in table {
                w.write_record(line)?;
            }
            w.flush()?;
            Ok(Outcome::Done)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
