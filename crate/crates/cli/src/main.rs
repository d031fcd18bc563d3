mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::{Invocation, Report};
use crate::manifest::{millis, RunManifest};

#[derive(Parser, Debug)]
#[command(
    name = "intertype",
    version,
    about = "Intersection type checking, inhabitation search and machine encodings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print tau_star and its manifest for a Turing machine.
    EncodeTm { spec: PathBuf },
    /// Print tau_star and its manifest for a semi-Thue system.
    EncodeSsts { spec: PathBuf },
    /// Run a machine from the blank tape of the given width.
    SimulateTm {
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        width: usize,
        /// Defaults to |Q|·|Σ|^n·n, which makes the answer exact.
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Search for a shortest rewrite 0^n to 1^n.
    RewriteSsts {
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        width: usize,
        /// Defaults to |Σ|^n, which makes the answer exact.
        #[arg(long)]
        step_bound: Option<usize>,
    },
    /// Build a closed witness for tau_star from the first accepting width.
    Synthesize {
        spec: PathBuf,
        /// Largest tape width to try.
        #[arg(long, default_value_t = 8)]
        width: usize,
        #[arg(long)]
        transcript: bool,
    },
    /// Decide `ctx ⊢ term : goal`. Repeat `--goal` (and optionally `--ctx`)
    /// to check one term against several judgments.
    Check {
        #[arg(long)]
        ctx: Vec<PathBuf>,
        #[arg(long)]
        term: String,
        #[arg(long, required = true)]
        goal: Vec<String>,
        #[arg(long)]
        transcript: bool,
        /// Replay a transcript file against the judgment.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Bounded inhabitation search.
    Search {
        #[arg(value_name = "TYPE", required_unless_present_any = ["from_tm", "from_ssts"])]
        ty: Option<String>,
        #[arg(long, conflicts_with_all = ["ty", "from_ssts"])]
        from_tm: Option<PathBuf>,
        #[arg(long, conflicts_with = "ty")]
        from_ssts: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Search the cell family of this width instead of tau_star.
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        max_branch: Option<usize>,
        #[arg(long)]
        transcript: bool,
    },
    /// Simulate at widths 3..=max-width and check a witness on success.
    Verify {
        spec: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_width: usize,
        #[arg(long)]
        max_steps: Option<u64>,
        #[arg(long)]
        transcript: bool,
    },
    /// Print the canonical form, rank and order of a type.
    Rank { ty: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inv = Invocation::new(cli.command.name());
    let report = commands::run(&cli.command, &mut inv);
    let (outcome, code) = match report {
        Ok(Report {
            stdout,
            outcome,
            code,
        }) => {
            print!("{stdout}");
            (outcome, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ("input-error".to_string(), 2)
        }
    };
    let manifest = RunManifest {
        subcommand: inv.subcommand,
        input_hash: inv.hasher.finish(),
        parameters: inv.parameters,
        outcome,
        exit_code: code,
        wall_time_ms: millis(start.elapsed()),
    };
    eprintln!(
        "manifest: {}",
        serde_json::to_string(&manifest).expect("manifest serializes")
    );
    ExitCode::from(code)
}
