//! Library side of the `symdet` command-line tool.

pub mod bench;
pub mod commands;
pub mod error;
pub mod problem;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{EvalMode, ExpandTarget, Output};
pub use error::{CliError, Result};
pub use problem::Problem;

#[derive(Debug, Parser)]
#[command(name = "symdet", version, about = "Symmetric eigenvalue polynomials as determinant sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the polynomial of a problem file.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "det")]
        mode: EvalMode,
    },
    /// Print the polynomial as a polynomial in matrix entries or companion coefficients.
    Expand {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "entries")]
        target: ExpandTarget,
    },
    /// Run the property sweep over random fixtures.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Offsets every determinant-side value by one; the sweep must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time determinant-side and eigenvalue-side evaluation.
    Bench {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Run one parsed invocation. Nothing is printed here; on error no output is produced.
pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Eval { file, mode } => commands::eval(&Problem::load(file)?, *mode),
        Command::Expand { file, target } => commands::expand(&Problem::load(file)?, *target),
        Command::Verify { seed, max_n, trials, inject_fault } => {
            let cfg = verify::VerifyConfig { seed: *seed, max_n: *max_n, trials: *trials, corrupt: *inject_fault };
            let reports = verify::run(&cfg);
            let stdout = verify::render(&cfg, &reports);
            match verify::failures(&reports) {
                0 => Ok(Output { stdout, warnings: Vec::new() }),
                // The report is the diagnostic here, so it still goes to stdout.
                k => {
                    print!("{stdout}");
                    Err(CliError::VerifyFailed(k))
                }
            }
        }
        Command::Bench { max_n, csv } => {
            let rows = bench::run(*max_n)?;
            if let Some(path) = csv {
                std::fs::write(path, bench::render_csv(&rows))?;
            }
            Ok(Output { stdout: bench::render_table(&rows), warnings: Vec::new() })
        }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
