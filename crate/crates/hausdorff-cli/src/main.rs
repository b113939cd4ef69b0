//! Command-line front end: verification suites, closed-form table checks,
//! the errata ledger, and the 1-D solvers, with reproducible CSV/JSON output.
//!
//! Exit status: 0 when every asserted check passes, 1 on a numerical failure,
//! 2 on a malformed configuration or command line.

mod commands;
mod config;
mod report;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "hausdorff",
    version,
    about = "Hausdorff fractal calculus: verification suites, identity tables, errata ledger, and 1-D solvers"
)]
struct Cli {
    #[command(flatten)]
    common: config::CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity verification suites across mu and conventions.
    Verify,
    /// Solve the 1-D anomalous diffusion or fractal Burgers equation.
    Solve(config::SolveArgs),
    /// Check the closed-form derivative and integral tables.
    Table,
    /// Emit the errata ledger with numerical witnesses.
    Errata,
}

fn main() {
    let cli = Cli::parse();
    let solve_args = match &cli.command {
        Command::Solve(args) => Some(args),
        _ => None,
    };
    let cfg = match config::resolve(&cli.common, solve_args) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("config error: {err:#}");
            std::process::exit(2);
        }
    };
    let outcome = match &cli.command {
        Command::Verify => commands::cmd_verify(&cfg),
        Command::Solve(_) => commands::cmd_solve(&cfg),
        Command::Table => commands::cmd_table(&cfg),
        Command::Errata => commands::cmd_errata(&cfg),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
