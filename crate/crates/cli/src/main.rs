//! `coincidence-lab`: coincidence classes, affine coincidence sets and
//! deformability verdicts from JSON scenario files.

mod failure;
mod report;
mod scenario;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::Failure;
use scenario::ScenarioFile;

#[derive(Parser)]
#[command(name = "coincidence-lab", version, about)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Do not print the report or progress to stdout.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the coincidence class; torus models also get the solver cross-check.
    Class { file: PathBuf },
    /// Enumerate the coincidence points of an affine torus system.
    Solve { file: PathBuf },
    /// Apply the deformability rules to the scenario's decider block.
    Decide { file: PathBuf },
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let path = match &cli.command {
        Command::Class { file } | Command::Solve { file } | Command::Decide { file } => file,
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let scenario = ScenarioFile::parse(&text)?;
    let value = match cli.command {
        Command::Class { .. } => report::cmd_class(&scenario)?,
        Command::Solve { .. } => report::cmd_solve(&scenario)?,
        Command::Decide { .. } => report::cmd_decide(&scenario)?,
    };
    Ok(report::render(value))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {f}");
            return f.exit_code();
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &report) {
                let f = Failure::io(format!("{}: {e}", path.display()));
                eprintln!("error: {f}");
                return f.exit_code();
            }
            if !cli.quiet {
                println!("wrote {}", path.display());
            }
        }
        None if !cli.quiet => print!("{report}"),
        None => {}
    }
    ExitCode::SUCCESS
}
