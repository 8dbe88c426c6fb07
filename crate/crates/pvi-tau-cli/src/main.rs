//! Command line front end: sequence generation, verification suites,
//! conjecture sweeps, caching, and report emission.
//!
//! Exit codes: 0 = pass, 1 = mathematical failure or counterexample found,
//! 2 = usage or parameter error.

// Library errors carry exact polynomial witnesses, so Err variants are wide.
#![allow(clippy::result_large_err)]

mod cache;
mod commands;
mod docs;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "pvi-tau",
    version,
    about = "Exact tau-function polynomial families for Painlevé VI: generation, verification, conjecture experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a T or S family and emit the sequence document.
    Seq(commands::seq::SeqArgs),
    /// Run the exact identity suites and emit a report document.
    Verify(commands::verify::VerifyArgs),
    /// Run a conjecture experiment and emit its report.
    Conjecture(commands::conjecture::ConjectureArgs),
    /// Time a generation run and trace coefficient growth.
    Bench(commands::bench::BenchArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Seq(args) => commands::seq::run(args),
        Command::Verify(args) => commands::verify::run(args),
        Command::Conjecture(args) => commands::conjecture::run(args),
        Command::Bench(args) => commands::bench::run(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}
