mod commands;
mod io;
mod pipeline;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use rainbow_poset::solver::DEFAULT_BUDGET;

use crate::commands::{BoundsArgs, CongenArgs, ConstructArgs, DecomposeArgs, DetectArgs, SolveArgs};
use crate::io::{emit, Format};
use crate::verify::VerifyArgs;

#[derive(Parser, Debug)]
#[command(name = "rainbow", version, about = "Rainbow subposet colorings of the Boolean lattice")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// search nodes allowed per solver call
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// output file (or directory for `run`); stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the explicit colorings
    Construct(ConstructArgs),
    /// Validate a coloring, or search a set family for copies
    Detect(DetectArgs),
    /// Exact max-min class size by feasibility search
    Solve(SolveArgs),
    /// Chain decomposition of a cross-comparable family system
    Decompose(DecomposeArgs),
    /// Closed forms and numeric checks
    Bounds(BoundsArgs),
    /// Seeded random chain constructions
    Congen(CongenArgs),
    /// Run the claim battery and report MATCH/MISMATCH per claim
    Verify(VerifyArgs),
    /// Execute a JSON pipeline spec and write its artifacts
    Run {
        spec: PathBuf,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    let (rendered, side) = match &cli.command {
        Command::Construct(a) => {
            let (r, side) = commands::construct(a, cli.seed)?;
            (r, side.map(|csv| (a.report.clone().unwrap(), csv)))
        }
        Command::Congen(a) => {
            let (r, side) = commands::congen(a, cli.seed)?;
            (r, side.map(|csv| (a.report.clone().unwrap(), csv)))
        }
        Command::Detect(a) => (commands::detect(a)?, None),
        Command::Solve(a) => (commands::solve(a, cli.budget)?, None),
        Command::Decompose(a) => (commands::decompose(a)?, None),
        Command::Bounds(a) => (commands::bounds(a)?, None),
        Command::Verify(a) => {
            let report = verify::verify_suite(a.profile, cli.seed, cli.budget);
            verify::write(&report, cli.format, out)?;
            return Ok(if report.hard_mismatches() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Run { spec } => {
            let summary = pipeline::run_experiment(spec, out, cli.seed, cli.budget)?;
            print!("{summary}");
            return Ok(ExitCode::SUCCESS);
        }
    };
    let body = rendered.render(cli.format)?;
    emit(&body, out)?;
    if let Some((path, csv)) = side {
        emit(&csv, Some(&path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
