//! `leonard`: command-line front end for Leonard system computations.
//!
//! Every subcommand reads one JSON document (stdin or `--input`) and writes
//! one canonical JSON document (stdout or `--output`), so commands compose
//! with pipes:
//!
//! ```text
//! leonard construct --family krawtchouk --d 3 --field Q | leonard validate | leonard xspace
//! ```
//!
//! Exit status: 0 on success, 2 when the input is not a Leonard system,
//! 1 for usage and I/O errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "leonard",
    version,
    about = "Exact computations with Leonard systems"
)]
struct Cli {
    /// Read the input document from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for anything random; overrides the seed of a census job.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a candidate from a named family or a file.
    Construct(ConstructArgs),
    /// Check the axioms and emit the full system with its idempotents.
    Validate,
    /// Basis of X and the check against I, A, A*, AA*, A*A.
    Xspace,
    /// Askey-Wilson parameters.
    Awparams,
    /// Matrix, kernel and image of Upsilon (or Upsilon* with --star).
    Upsilon {
        #[arg(long)]
        star: bool,
    },
    /// Run a finite-field census job.
    Census(CensusArgs),
    /// Summarize a census records file.
    Report {
        /// Records file (newline-delimited JSON); stdin if omitted.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Plain-text table instead of JSON.
        #[arg(long)]
        text: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Krawtchouk,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, conflicts_with = "from", requires = "d")]
    family: Option<Family>,
    /// Diameter.
    #[arg(long)]
    d: Option<usize>,
    /// `Q` or `GF(p)`.
    #[arg(long, env = "LEONARD_FIELD", default_value = "Q")]
    field: String,
    /// Candidate JSON file (`-` for stdin).
    #[arg(long, required_unless_present = "family")]
    from: Option<PathBuf>,
    /// Replace (A, A*) by (uA + vI, u*A* + v*I).
    #[arg(long, value_name = "u,v,us,vs", allow_hyphen_values = true)]
    affine: Option<String>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Job description (JSON).
    #[arg(long)]
    job: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Continue from the checkpoint next to the records file.
    #[arg(long)]
    resume: bool,
    /// Records file; overrides the job's `output`.
    #[arg(long)]
    records: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
