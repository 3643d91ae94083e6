//! `bsh`: build and check balancedly splittable Hadamard matrices, reproduce
//! the feasibility tables, and build association schemes from them.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bsh_core::Exec;
use clap::{Args, Parser, Subcommand};

mod analyze;
mod construct;
mod enumerate;
mod latin;
mod report;
mod scheme;
mod util;

use report::{Outcome, RunReport};
use util::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "bsh", version, about = "Balancedly splittable Hadamard matrix workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Run every kernel on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Print the full run report as JSON instead of the plain rendering.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the run report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

impl Global {
    pub fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a Hadamard matrix with a designated split.
    #[command(subcommand)]
    Construct(construct::ConstructCmd),
    /// Check a row subset of a Hadamard matrix.
    #[command(subcommand)]
    Check(analyze::CheckCmd),
    /// Derived objects of a split or of its parameters.
    #[command(subcommand)]
    Analyze(analyze::AnalyzeCmd),
    /// Parameter tables.
    #[command(subcommand)]
    Enumerate(enumerate::EnumerateCmd),
    /// Non-existence searches.
    #[command(subcommand)]
    Nonexist(enumerate::NonexistCmd),
    /// Latin squares.
    #[command(subcommand)]
    Latin(latin::LatinCmd),
    /// Association schemes.
    #[command(subcommand)]
    Scheme(scheme::SchemeCmd),
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Construct(c) => construct::run(c, g),
        Command::Check(c) => analyze::run_check(c, g),
        Command::Analyze(c) => analyze::run(c, g),
        Command::Enumerate(c) => enumerate::run(c, g),
        Command::Nonexist(c) => enumerate::run_nonexist(c, g),
        Command::Latin(c) => latin::run(c, g),
        Command::Scheme(c) => scheme::run(c, g),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = bsh_core::exec::with_workers(cli.global.workers, || run(&cli));
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("bsh: {e}");
            return match e {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Verify(_) | CliError::Other(_) => ExitCode::from(1),
            };
        }
    };
    let report = RunReport::build(argv[1..].to_vec(), &outcome, start.elapsed().as_millis());
    if let Some(path) = &cli.global.report {
        if let Err(e) = util::write_json(path, &report) {
            eprintln!("bsh: {e}");
            return ExitCode::from(1);
        }
    }
    let body = if cli.global.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else if let Some(text) = &outcome.text {
        text.clone()
    } else {
        serde_json::to_string_pretty(&outcome.payload).expect("payload serializes") + "\n"
    };
    // A closed pipe (`bsh ... | head`) is not an error.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    for (name, ok) in &outcome.checks {
        if !ok {
            eprintln!("bsh: check failed: {name}");
        }
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
