use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod load;

use load::Failure;

const COST_HELP: &str = "CSV columns:
  k             block length (`inf` on the closing limit row)
  W_tape        work to write k pattern symbols over default tape cells
  W_diss_eq2    memory-update dissipation as erasure minus update randomness
  W_diss_eq3    memory-update dissipation as predictive minus retrodictive uncertainty
  W_diss_eq5    memory-update dissipation as the gain in block/memory mutual information
  W_out         work released by extracting k pattern symbols
  W_diss_limit  large-k dissipation H(R) - E
  units         `bits` or `J@<T>K`
  memory_id     memory strategy name";

const TRACE_HELP: &str = "Trace CSV columns:
  block_index           block number from 0
  symbols               symbols written in the block
  gen_state_before      generator memory state at block start
  gen_state_after       generator memory state at block end
  ext_state_before      extractor memory state at block start
  ext_state_after       extractor memory state at block end
  battery_balance_bits  analytic battery balance after the block, in bits";

#[derive(Parser)]
#[command(name = "patterncost", version, about = "Work costs of generating and extracting stationary patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report statistical complexity, entropy rate, excess entropy and synchronization.
    Analyze(AnalyzeArgs),
    /// Work costs of one block length for one memory.
    #[command(after_help = COST_HELP)]
    Costs(CostsArgs),
    /// Cost CSV over a range of block lengths, closed by the large-k limit row.
    #[command(after_help = COST_HELP)]
    Sweep(SweepArgs),
    /// Run the generate-then-extract cycle and compare with the analytic costs.
    #[command(after_help = TRACE_HELP)]
    Simulate(SimulateArgs),
    /// Write the causal-state machine of a unifilar presentation.
    Minimize(MinimizeArgs),
    /// List the built-in memory strategies.
    Memories,
}

#[derive(Args)]
pub struct Common {
    /// Machine file (JSON).
    pub machine: PathBuf,
    /// Largest number of words in an enumerated block distribution.
    #[arg(long, default_value_t = patterncost::process::BlockBudget::DEFAULT_MAX_WORDS)]
    pub block_budget: usize,
}

#[derive(Args)]
pub struct MemoryArgs {
    /// Built-in memory strategy.
    #[arg(long, default_value = "causal")]
    pub memory: String,
    /// Refinement kernel file; overrides --memory.
    #[arg(long)]
    pub kernel: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum UnitsArg {
    Bits,
    #[value(name = "kT")]
    Kt,
}

#[derive(Args)]
pub struct UnitsArgs {
    /// Output units; kT reports joules at --temperature.
    #[arg(long, value_enum, default_value = "bits")]
    pub units: UnitsArg,
    /// Temperature in kelvin.
    #[arg(long)]
    pub temperature: Option<f64>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest L for excess entropy convergence.
    #[arg(long, default_value_t = patterncost::info::DEFAULT_EXCESS_L_MAX)]
    pub l_max: usize,
    #[arg(long, default_value_t = patterncost::info::DEFAULT_EXCESS_TOL)]
    pub tol: f64,
    /// Longest observation window in the synchronization profile.
    #[arg(long, default_value_t = 6)]
    pub sync_l: usize,
}

#[derive(Args)]
pub struct CostsArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub memory: MemoryArgs,
    #[command(flatten)]
    pub units: UnitsArgs,
    /// Block length.
    #[arg(short, long)]
    pub k: usize,
    /// Emit CSV instead of a table.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub memory: MemoryArgs,
    #[command(flatten)]
    pub units: UnitsArgs,
    /// Block lengths, `A..B` inclusive or a single value.
    #[arg(short, long, value_parser = parse_range)]
    pub k: (usize, usize),
    /// Write the CSV here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub memory: MemoryArgs,
    #[arg(short, long)]
    pub k: usize,
    /// Number of blocks.
    #[arg(short = 'n', long, default_value_t = 10_000)]
    pub blocks: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the per-block trace CSV here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args)]
pub struct MinimizeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Output machine file; stdout if absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| format!("`{a}` is not a block length"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("`{b}` is not a block length"))?;
    if a == 0 || a > b {
        return Err(format!("range {a}..{b} must be non-empty, ascending and start at 1 or more"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => commands::analyze(&a),
        Command::Costs(a) => commands::costs(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Minimize(a) => commands::minimize(&a),
        Command::Memories => commands::memories(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
