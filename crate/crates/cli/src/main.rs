use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use frobsat_cli::{parse_session, run_command, write_report, CliError, Command, Flags};

/// Frobenius-power saturation experiments over prime fields.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    command: Command,
    /// Session file, or `-` for stdin.
    session: PathBuf,
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long)]
    elem: Option<String>,
    /// Ideal whose generators are the linking elements.
    #[arg(long)]
    x: Option<String>,
    /// Comma-separated powers of the characteristic.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    emax: Option<u32>,
    /// Element name or `auto`.
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    window: Option<u64>,
    #[arg(long)]
    lmax: Option<u64>,
    #[arg(long)]
    nmax: Option<u64>,
    #[arg(long)]
    mmax: Option<u64>,
    #[arg(long)]
    retries: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    /// Per-q wall-clock budget in seconds for scans.
    #[arg(long)]
    budget: Option<f64>,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_session(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn run(args: Args) -> Result<(), CliError> {
    let session = parse_session(&read_session(&args.session)?)?;
    let budget = match args.budget {
        Some(b) if !(b.is_finite() && b > 0.0) => {
            return Err(CliError::Usage("--budget must be positive".into()))
        }
        b => b.map(Duration::from_secs_f64),
    };
    let flags = Flags {
        ideal: args.ideal,
        elem: args.elem,
        x: args.x,
        q: args.q,
        cap: args.cap,
        seed: args.seed,
        emax: args.emax,
        c: args.c,
        window: args.window,
        lmax: args.lmax,
        nmax: args.nmax,
        mmax: args.mmax,
        retries: args.retries,
        steps: args.steps,
        budget,
        timings: args.timings,
    };
    let report = run_command(&session, args.command, &flags)?;
    write_report(&report, args.out.as_deref())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
