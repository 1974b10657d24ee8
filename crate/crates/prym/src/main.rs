use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use prym::jobs::{emit, run, Command, Format, InputSource, JobSpec, DEFAULT_SEED};

/// Split the Jacobian of a bielliptic genus-3 curve and check the splitting
/// by point counts.
#[derive(Debug, Parser)]
#[command(name = "prym", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Curve document (JSON).
    #[arg(long, value_name = "PATH", conflicts_with = "curve")]
    input: Option<PathBuf>,
    /// Inline curve document.
    #[arg(long, value_name = "JSON")]
    curve: Option<String>,
    /// Reduce the curve modulo this prime (overrides the document).
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Extension degree for genus-5 counts in `bruin`.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=5))]
    depth: u32,
    /// Cap on evaluations per plane-curve count.
    #[arg(long, value_name = "N")]
    cap_evals: Option<u64>,
    #[arg(long)]
    skip_validation: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match (cli.input, cli.curve) {
        (Some(p), _) => InputSource::Path(p),
        (None, Some(s)) => InputSource::Inline(s),
        (None, None) => InputSource::None,
    };
    let job = JobSpec {
        command: cli.command,
        input,
        p: cli.p,
        seed: cli.seed,
        depth: cli.depth,
        cap_evals: cli.cap_evals,
        skip_validation: cli.skip_validation,
        format: cli.format,
        out: cli.out,
    };
    let outcome = run(&job);
    ExitCode::from(emit(&job, &outcome) as u8)
}
