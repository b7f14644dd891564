//! `ftpm` — mine frequent temporal patterns from labeled interval data,
//! generate synthetic datasets, and compare pattern listings.

use clap::{Parser, Subcommand};
use ftpm_cli::run;

#[derive(Parser)]
#[command(name = "ftpm", version, about = "Frequent temporal pattern mining over labeled interval sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mine frequent temporal patterns from a data file
    Mine(run::MineArgs),
    /// Generate a synthetic labeled dataset, optionally planting a pattern
    Gen(run::GenArgs),
    /// Compare two pattern listings line by line
    Diff(run::DiffArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Mine(a) => run::cmd_mine(a),
        Cmd::Gen(a) => run::cmd_gen(a),
        Cmd::Diff(a) => run::cmd_diff(a),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
