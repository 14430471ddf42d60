//! `pqc`: verification sweeps for the bar resolution, nonabelian homology of
//! finite parity quasicomplexes, and Schreier extension workflows.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on input
//! or usage errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::{CommandOutput, InputError};

#[derive(Parser, Debug)]
#[command(
    name = "pqc",
    version,
    about = "Parity quasicomplex and group extension checks"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the structured report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the bar resolution identities over every generator.
    VerifyBar {
        /// Standard group name (c2, v4, s3, ...) or group file.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Comma-separated subset of pch, faces, structural, lowDegreeFormulas.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Homology classes of a finite PQC at one degree.
    Homology {
        #[arg(long)]
        pqc: PathBuf,
        #[arg(long)]
        degree: i32,
    },
    /// Extension workflows.
    #[command(subcommand)]
    Ext(ExtCommand),
    /// H²(G, N) for an abelian N by brute force.
    H2(Coefficients),
}

#[derive(Subcommand, Debug)]
pub enum ExtCommand {
    /// Factor set, pseudoaction and every identity for an extension file.
    Analyze {
        #[arg(long)]
        ext: PathBuf,
    },
    /// Synthesize the group N × G from a pseudoaction and a factor set.
    Build {
        #[command(flatten)]
        coefficients: Coefficients,
        /// Factor set file, or inline entries such as "t,t=1".
        #[arg(long)]
        f: String,
    },
    /// H² class count cross-checked against extension equivalence.
    Classify(Coefficients),
}

#[derive(Args, Debug, Clone)]
pub struct Coefficients {
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub g: String,
    /// Action or pseudoaction file `{ "L": [[...]] }`.
    #[arg(long, conflicts_with = "trivial_action")]
    pub action: Option<PathBuf>,
    #[arg(long)]
    pub trivial_action: bool,
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<CommandOutput, InputError> {
    match &cli.command {
        Command::VerifyBar {
            group,
            max_degree,
            checks,
        } => commands::verify_bar(argv, group, *max_degree, checks),
        Command::Homology { pqc, degree } => commands::homology(argv, pqc, *degree),
        Command::Ext(ExtCommand::Analyze { ext }) => commands::ext_analyze(argv, ext),
        Command::Ext(ExtCommand::Build { coefficients, f }) => {
            commands::ext_build(argv, coefficients, f)
        }
        Command::Ext(ExtCommand::Classify(coefficients)) => {
            commands::ext_classify(argv, coefficients)
        }
        Command::H2(coefficients) => commands::h2(argv, coefficients),
    }
}

/// The command line minus `--out` and `--jobs`, which do not affect results.
fn echoed_arguments(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_value = false;
    for arg in args {
        if skip_value {
            skip_value = false;
        } else if arg == "--out" || arg == "--jobs" {
            skip_value = true;
        } else if !(arg.starts_with("--out=") || arg.starts_with("--jobs=")) {
            out.push(arg);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let argv = echoed_arguments(std::env::args().skip(1));
    let start = Instant::now();
    let output = match run(&cli, argv) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!(
        "{}",
        output
            .report
            .to_text(&output.summary, start.elapsed().as_millis())
    );
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, output.report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(if output.report.passed { 0 } else { 1 })
}
