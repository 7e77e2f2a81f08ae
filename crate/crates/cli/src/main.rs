//! `digroup`: load, check and analyse digroup representations from JSON files.
//!
//! Exit status is 0 on success, 1 when a check fails or the independent
//! computations disagree, and 2 when input cannot be read or parsed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use digroup_core::Field;

use commands::{CliError, Context, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "digroup",
    version,
    about = "Exact Ext¹ and splitting computations for digroup representations"
)]
struct Cli {
    /// Scalar field: "rational" or a prime p. Overrides the field named in input files.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Seed for commands that generate random instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a digroup, representation or sequence file.
    Check { path: PathBuf },
    /// Compute Ext¹(Q, W) three ways and compare.
    Ext1 { quotient: PathBuf, sub: PathBuf },
    /// Decide whether a short exact sequence splits.
    Split { path: PathBuf },
    /// Compare Hom and Ext¹ with the invariants of their halo-algebra versions.
    Collapse { quotient: PathBuf, sub: PathBuf },
    /// Look for nonzero Ext¹ between any two of the given representations.
    Probe {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Write a bundled example: digroup, representation, sequence, sub and quotient.
    Example {
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write a random pair of representations and a random extension of them.
    Generate {
        #[arg(long, default_value_t = 2)]
        group_order: usize,
        #[arg(long, default_value_t = 2)]
        halo_size: usize,
        /// Largest dimension of either representation.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let ctx = Context {
        field: cli.field,
        seed: cli.seed,
    };
    match cli.command {
        Command::Check { path } => commands::check(&ctx, &path),
        Command::Ext1 { quotient, sub } => commands::ext1(&ctx, &quotient, &sub),
        Command::Split { path } => commands::split(&ctx, &path),
        Command::Collapse { quotient, sub } => commands::collapse(&ctx, &quotient, &sub),
        Command::Probe { paths } => commands::probe(&ctx, &paths),
        Command::Example { name, out } => commands::example(&ctx, &name, &out),
        Command::Generate {
            group_order,
            halo_size,
            dim,
            out,
        } => commands::generate(&ctx, group_order, halo_size, dim, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("reports serialize")
                );
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
