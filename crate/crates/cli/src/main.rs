use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fforge_cli::commands::{run_augment, run_check, run_pack, run_trim, run_verify, run_verify_against, run_verify_random};
use fforge_cli::report::EXIT_ERROR;
use fforge_cli::{parse_instance, CliError, CliResult, Instance, Report};

/// Check, solve and certify matroid-based packings of rooted trees and hypertrees.
///
/// Exit status: 0 solved or feasible, 1 infeasible (certificate printed) or
/// verification failed, 2 usage, input or size-cap error.
#[derive(Debug, Parser)]
#[command(name = "fforge", version)]
struct Cli {
    /// Worker threads for partition scans (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the feasibility conditions of the instance's problem.
    Check { instance: PathBuf },
    /// Construct a packing, or print the violated condition.
    Pack { instance: PathBuf },
    /// Add `gamma` edges (the fewest possible if unset) and pack.
    Augment { instance: PathBuf },
    /// Trim every hyperedge to a pair while keeping both cut conditions.
    Trim { instance: PathBuf },
    /// Run the brute-force oracle suite on an instance, a printed result, or random instances.
    Verify {
        /// Instance file; omit with `--random`.
        instance: Option<PathBuf>,
        /// A result printed by another command, re-checked against the instance.
        #[arg(long, value_name = "RESULT", conflicts_with = "random")]
        against: Option<PathBuf>,
        /// Verify N generated instances instead of a file.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        /// Seed for `--random`.
        #[arg(long, default_value_t = 0, requires = "random")]
        seed: u64,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load(path: &Path) -> CliResult<Instance> {
    parse_instance(&read(path)?).map_err(|e| match e {
        CliError::Syntax { line, column, message } => CliError::Syntax { line, column, message: format!("{}: {message}", path.display()) },
        CliError::Field { path: field, message } => CliError::Field { path: format!("{}: {field}", path.display()), message },
        other => other,
    })
}

fn run(cli: Cli) -> CliResult<Report> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    }
    match cli.command {
        Command::Check { instance } => run_check(&load(&instance)?),
        Command::Pack { instance } => run_pack(&load(&instance)?),
        Command::Augment { instance } => run_augment(&load(&instance)?),
        Command::Trim { instance } => run_trim(&load(&instance)?),
        Command::Verify { instance, against, random, seed } => match (instance, random) {
            (None, Some(n)) => run_verify_random(n, seed),
            (Some(path), None) => {
                let inst = load(&path)?;
                match against {
                    Some(result) => run_verify_against(&inst, &read(&result)?),
                    None => run_verify(&inst),
                }
            }
            _ => Err(CliError::Usage("`verify` takes either an instance file or `--random N`".into())),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
