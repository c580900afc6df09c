//! Command-line front end: reproducible optimization runs, exhaustive
//! sweeps, generator enumeration, uniformity studies, benchmark queries,
//! statistics over imported result tables, and the bundled reproduction
//! checks.
//!
//! Exit codes: 0 success, 1 failed reproduction checks, 2 configuration or
//! schema errors, 3 resource-guard trips. No environment variables are
//! read; every input is an explicit argument or file.

mod commands;
mod reproduce;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "slcg",
    version,
    about = "Deterministic seed-independent optimization over structured congruential cycles"
)]
struct Cli {
    /// Suppress informational output on stdout.
    #[arg(long, global = true)]
    quiet: bool,

    /// Tabular output format where a subcommand offers both.
    #[arg(long, global = true, value_enum, default_value_t = commands::OutputFormat::Csv)]
    format: commands::OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the adaptive optimizer on a benchmark or config file.
    Optimize(commands::OptimizeArgs),
    /// Exhaustively sweep the surrogate landscape of a problem.
    Sweep(commands::SweepArgs),
    /// Enumerate generators for a bit width.
    Generators(commands::GeneratorsArgs),
    /// Print the last-generator bound for a width.
    AlphaMax(commands::AlphaMaxArgs),
    /// Generate a point cloud and its uniformity report.
    Uniformity(commands::UniformityArgs),
    /// List benchmark problems or evaluate one at a point.
    BenchSuite(commands::BenchSuiteArgs),
    /// Friedman ranks and Holm post-hoc over a results table.
    Stats(commands::StatsArgs),
    /// Run a bundled reproduction check.
    Reproduce(reproduce::ReproduceArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Optimize(args) => commands::run_optimize(args, cli.quiet),
        Command::Sweep(args) => commands::run_sweep(args, cli.quiet),
        Command::Generators(args) => commands::run_generators(args, cli.format),
        Command::AlphaMax(args) => commands::run_alpha_max(args),
        Command::Uniformity(args) => commands::run_uniformity(args, cli.quiet),
        Command::BenchSuite(args) => commands::run_bench_suite(args),
        Command::Stats(args) => commands::run_stats(args, cli.quiet),
        Command::Reproduce(args) => reproduce::run(args, cli.quiet),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(if err.is_guard() { 3 } else { 2 });
        }
    }
}
