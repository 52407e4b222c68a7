use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "dpgm", version, about = "Optimal measurements for dihedral hidden subgroup states")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Success probability of the optimal measurement over a range of k.
    Sweep(SweepArgs),
    /// Oracle-scale certification of the closed-form measurements.
    Verify(VerifyArgs),
    /// Simulated measurement trials against a hidden subgroup.
    Simulate(SimulateArgs),
    /// Uniform subset-sum solutions (or quantum samples) for instances in a file.
    Subsetsum(SubsetSumArgs),
    /// Parity measurement success against its upper bound.
    Lsb(LsbArgs),
    /// Copy lower bound from the information-theoretic argument.
    Infobound(InfoBoundArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long = "N")]
    pub n: usize,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, default_value = "1..8")]
    pub k: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = dihedral_pgm::DEFAULT_SEED)]
    pub seed: u64,
    /// Enumerate every label regardless of size.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Pair each state with the wrong effect (negative control).
    #[arg(long)]
    pub perturb: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// A shift `d` in Z_N, or `trivial`.
    #[arg(long, default_value = "0")]
    pub hidden: String,
    /// Number of trials.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = dihedral_pgm::DEFAULT_SEED)]
    pub seed: u64,
    /// Per-trial CSV log.
    #[arg(long)]
    pub log: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SubsetSumArgs {
    /// Instances, one `N k t x_1 ... x_k` per line.
    #[arg(long)]
    pub file: PathBuf,
    /// Solutions drawn per instance.
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    #[arg(long, default_value_t = dihedral_pgm::DEFAULT_SEED)]
    pub seed: u64,
    /// Emit the quantum sample `Ũ†|t⟩` instead of classical draws.
    #[arg(long)]
    pub quantum: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LsbArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = dihedral_pgm::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct InfoBoundArgs {
    #[arg(long = "N")]
    pub n: usize,
    /// Target success probability.
    #[arg(long)]
    pub p: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a command produced: its report text and whether every check passed.
pub struct Report {
    pub text: String,
    pub passed: bool,
}

/// A command-line mistake that the parser cannot catch.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<dihedral_pgm::Error>() {
        Some(err) if err.is_resource_guard() => EXIT_GUARD,
        Some(
            dihedral_pgm::Error::OddModulus(_)
            | dihedral_pgm::Error::InvalidArgument(_)
            | dihedral_pgm::Error::InvalidSubgroup(_)
            | dihedral_pgm::Error::Parse { .. },
        ) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn emit(out: &OutputArgs, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Usage("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let (report, out) = match &cli.command {
        Command::Sweep(a) => (commands::sweep(a)?, &a.out),
        Command::Verify(a) => (commands::verify(a)?, &a.out),
        Command::Simulate(a) => (commands::simulate(a)?, &a.out),
        Command::Subsetsum(a) => (commands::subsetsum(a)?, &a.out),
        Command::Lsb(a) => (commands::lsb(a)?, &a.out),
        Command::Infobound(a) => (commands::infobound(a)?, &a.out),
    };
    emit(out, &report.text)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(EXIT_PASS),
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
