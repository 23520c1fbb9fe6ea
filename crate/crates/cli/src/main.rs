//! `cubic`: batch front end for building, analysing and sweeping cubic-code lattices.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubic_code::Error;

#[derive(Parser)]
#[command(name = "cubic", version, about = "Cubic code boundaries, defects and logical operators")]
struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a configuration and report n, generator rank, k and generator counts.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Also count logicals supported in each named region.
        #[arg(long)]
        regions: bool,
    },
    /// Sweep k over a range of sizes, with the closed form alongside.
    ScanK(ScanKArgs),
    /// Minimal slab width supporting a logical operator.
    SupportScan(SupportArgs),
    /// Weight and peak energy of planar cascades against their push distance.
    CascadeScan {
        /// Species and plane, e.g. `m:yz`.
        #[arg(long, default_value = "m:yz")]
        variant: String,
        /// Travel axis (defaults to the second axis of the plane).
        #[arg(long)]
        travel: Option<String>,
        /// Push distances: `a..b`, `a..b:step` or a comma list.
        #[arg(long, default_value = "1..32")]
        values: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the excitations created by an operator.
    Syndrome {
        #[arg(long)]
        config: PathBuf,
        /// File holding the operator in `(x,y,z,slot,P)` text form.
        #[arg(long)]
        operator: PathBuf,
    },
    /// Evaluate a closed form: `FAMILY key=value ...`, or `zeta N`, `tau L1 [L2]`, `zmax L`, `q N L`.
    Oracle {
        #[arg(required = true, num_args = 1..)]
        key: Vec<String>,
    },
    /// Run the golden checks.
    Validate {
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 20240917)]
        seed: u64,
        /// Run only these check ids (e.g. `--only 1 --only 10c`).
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Args)]
pub struct ScanKArgs {
    /// Closed-form family whose boundary notation is used (box families and `triangular`).
    #[arg(long, conflicts_with = "config")]
    family: Option<String>,
    /// Configuration whose faces, defects and oracle key are reused at every size.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scan values: `a..b`, `a..b:step` or a comma list.
    #[arg(long)]
    values: String,
    /// Dims with `{}` standing for the scan value.
    #[arg(long, default_value = "{},{},{}")]
    dims: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SupportArgs {
    #[arg(long, conflicts_with = "twist_pair")]
    config: Option<PathBuf>,
    #[arg(long, default_value = "x")]
    axis: String,
    /// Centre slabs on this coordinate (default: middle of the axis).
    #[arg(long, conflicts_with = "start")]
    center: Option<i64>,
    /// Grow slabs from this coordinate instead of centring them.
    #[arg(long)]
    start: Option<i64>,
    /// Intersect every slab with this named region.
    #[arg(long)]
    region: Option<String>,
    /// Reproduce the <mm> twist-pair sweep over these heights (Δ = h).
    #[arg(long)]
    twist_pair: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failures with their exit codes: 2 for input, 3 for build, 4 for analysis, 1 for failed checks.
pub enum Failure {
    Core(Error),
    Io(String),
    ChecksFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::ChecksFailed(_) => 1,
            Failure::Core(e) => match e {
                Error::Config(_) | Error::BoundaryNotation(_) => 2,
                Error::InvalidLattice(_)
                | Error::InvalidDefect(_)
                | Error::Anticommuting { .. }
                | Error::DimensionMismatch { .. } => 3,
                Error::ClippedSupport(_)
                | Error::Precondition(_)
                | Error::CondensingFace(_)
                | Error::OutOfDomain(_)
                | Error::QubitOutOfRange { .. } => 4,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(msg) => f.write_str(msg),
            Failure::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Analyze { config, regions } => commands::analyze(&config, regions),
        Command::ScanK(args) => commands::scan_k(&args),
        Command::SupportScan(args) => commands::support_scan(&args),
        Command::CascadeScan {
            variant,
            travel,
            values,
            out,
        } => commands::cascade_scan(&variant, travel.as_deref(), &values, out.as_deref()),
        Command::Syndrome { config, operator } => commands::syndrome(&config, &operator),
        Command::Oracle { key } => commands::oracle(&key),
        Command::Validate { seed, only } => commands::validate(seed, &only),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
