use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use pminor_cli::commands::{self, Output, EXIT_USAGE};
use pminor_cli::document::{parse_rational, Document};
use pminor_core::membership::{Method, ReconstructMode};

/// Principal minors of symmetric matrices and the hyperdeterminantal module.
///
/// Exit codes: 0 member / success, 1 non-member, 2 input or usage error,
/// 3 indeterminate.
#[derive(Parser)]
#[command(name = "pminor", version)]
struct Cli {
    /// Worker threads for parallel steps [default: all cores]
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Principal minor vector of a matrix document
    Minors {
        matrix: PathBuf,
        /// Homogenizing scalar t
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a minors document is a vector of principal minors
    Check {
        minors: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Basis)]
        method: MethodArg,
        #[command(flatten)]
        mode: ModeArgs,
        /// Seed for chart moves when the [0,...,0] coordinate is zero
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a symmetric matrix with the given principal minors
    Reconstruct {
        minors: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Weight basis of the hyperdeterminantal module
    HdBasis {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Representation-theoretic computations
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Reproducible experiments
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum RepCommand {
    /// Multiplicity of the trivial module in S_pi1 (x) ... (x) S_pin, e.g. "2,2;2,2;2,2"
    Multiplicity {
        partitions: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Isotypic decomposition of S^d(C^2 (x) ... (x) C^2)
    Decompose {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lower a polynomial document to a lowest weight vector
    LowerToLowest {
        polynomial: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Agreement counts of principal minors under off-diagonal sign changes
    SignFlip {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Maximum number of random matrices to try
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Basis,
    Reconstruct,
    Prefilter,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(clap::Args)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Relative tolerance for numeric mode
    #[arg(long, default_value_t = ReconstructMode::DEFAULT_TOL)]
    tol: f64,
}

impl ModeArgs {
    fn mode(&self) -> ReconstructMode {
        match self.mode {
            ModeArg::Exact => ReconstructMode::Exact,
            ModeArg::Numeric => ReconstructMode::Numeric { tol: self.tol },
        }
    }
}

fn emit(out: Output, path: Option<&Path>) -> anyhow::Result<u8> {
    match path {
        Some(path) => {
            std::fs::write(path, out.document.to_text())
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("{}", out.summary);
        }
        None => print!("{}", out.document.to_text()),
    }
    Ok(out.exit)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    match cli.command {
        Command::Minors { matrix, t, output } => {
            let t = parse_rational(&t)?;
            emit(
                commands::minors(&Document::read(&matrix)?, &t)?,
                output.as_deref(),
            )
        }
        Command::Check {
            minors,
            method,
            mode,
            seed,
            output,
        } => {
            let method = match method {
                MethodArg::Basis => Method::Basis,
                MethodArg::Reconstruct => Method::Reconstruct(mode.mode()),
                MethodArg::Prefilter => Method::Prefilter,
            };
            emit(
                commands::check(&Document::read(&minors)?, method, seed)?,
                output.as_deref(),
            )
        }
        Command::Reconstruct {
            minors,
            mode,
            output,
        } => emit(
            commands::reconstruct(&Document::read(&minors)?, mode.mode())?,
            output.as_deref(),
        ),
        Command::HdBasis { n, output } => emit(commands::basis(n)?, output.as_deref()),
        Command::Rep { command } => match command {
            RepCommand::Multiplicity { partitions, output } => {
                emit(commands::multiplicity(&partitions)?, output.as_deref())
            }
            RepCommand::Decompose { d, n, output } => {
                emit(commands::decompose(d, n)?, output.as_deref())
            }
            RepCommand::LowerToLowest { polynomial, output } => emit(
                commands::lower(&Document::read(&polynomial)?)?,
                output.as_deref(),
            ),
        },
        Command::Experiment { command } => match command {
            ExperimentCommand::SignFlip {
                n,
                seed,
                trials,
                output,
            } => emit(commands::sign_flip(n, seed, trials)?, output.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
