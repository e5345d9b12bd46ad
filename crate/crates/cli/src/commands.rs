use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use patterncost::causal::{synchronization_profile, MemoryStrategy};
use patterncost::info::{block_entropy, DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL};
use patterncost::sim::{run_cycle, SimConfig};
use patterncost::thermo::{cycle_report, dissipation_limit, SweepRow, COST_COLUMNS};
use patterncost::{
    excess_entropy, minimize_to_causal, BlockBudget, CausalMachine, MemoryRegistry, PrescientMachine, Units,
    ValidatedMachine,
};
use rayon::prelude::*;

use crate::load::{self, Failure};
use crate::{AnalyzeArgs, CostsArgs, MemoryArgs, MinimizeArgs, SimulateArgs, SweepArgs, UnitsArg, UnitsArgs};

type CmdResult = Result<(), Failure>;

fn bits(v: f64) -> String {
    Units::Bits.format(v)
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn units(args: &UnitsArgs) -> Result<Units, Failure> {
    match (args.units, args.temperature) {
        (UnitsArg::Bits, _) => Ok(Units::Bits),
        (UnitsArg::Kt, Some(t)) => Ok(Units::physical(t)?),
        (UnitsArg::Kt, None) => Err(Failure { code: 2, message: "--units kT requires --temperature".into() }),
    }
}

fn build_memory(
    m: &ValidatedMachine,
    args: &MemoryArgs,
    budget: &BlockBudget,
) -> Result<(CausalMachine, PrescientMachine), Failure> {
    let causal = minimize_to_causal(m)?;
    let mut registry = MemoryRegistry::with_builtins();
    let name = match &args.kernel {
        Some(path) => {
            let strategy = load::kernel(path)?;
            let name = strategy.name().to_string();
            registry.register(strategy);
            name
        }
        None => args.memory.clone(),
    };
    let memory = registry.build(&name, &causal, budget)?;
    Ok((causal, memory))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_failure(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn analyze(args: &AnalyzeArgs) -> CmdResult {
    let m = load::machine(&args.common.machine)?;
    let budget = load::budget(args.common.block_budget)?;
    println!("states={}", m.num_states());
    println!("unifilar={}", m.is_unifilar());
    let c = minimize_to_causal(&m)?;
    println!("causal_states={}", c.num_states());
    println!("C={}", bits(c.statistical_complexity()));
    println!("h={}", bits(c.entropy_rate()));
    let e = excess_entropy(c.machine(), args.l_max, args.tol, &budget)?;
    match e.converged_at {
        Some(l) => println!("E={} converged=true L={l}", bits(e.value)),
        None => println!("E={} converged=false L_max={}", bits(e.value), args.l_max),
    }
    let profile = synchronization_profile(c.machine(), args.sync_l, &budget)?;
    match profile.crypticity() {
        Some(l) => println!("crypticity={l}"),
        None => println!("crypticity=unresolved L_max={}", args.sync_l),
    }
    for (l, h) in &profile.entries {
        println!("sync L={l} H={}", bits(*h));
    }
    Ok(())
}

pub fn costs(args: &CostsArgs) -> CmdResult {
    let m = load::machine(&args.common.machine)?;
    let budget = load::budget(args.common.block_budget)?;
    let units = units(&args.units)?;
    let (causal, memory) = build_memory(&m, &args.memory, &budget)?;
    let e = excess_entropy(causal.machine(), DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL, &budget)?;
    let cycle = cycle_report(&memory, args.k, m.default_distribution(), units, &budget, e.value)?;
    if args.csv {
        SweepRow::write_csv(&[SweepRow::Cost(cycle.report)], io::stdout().lock())?;
        return Ok(());
    }
    for (col, val) in COST_COLUMNS.iter().zip(cycle.report.to_record()) {
        println!("{col}={val}");
    }
    println!("net={}", units.format(cycle.net));
    println!("causal_minimum={}", cycle.achieves_causal_minimum);
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> CmdResult {
    let m = load::machine(&args.common.machine)?;
    let budget = load::budget(args.common.block_budget)?;
    let units = units(&args.units)?;
    let (causal, memory) = build_memory(&m, &args.memory, &budget)?;
    let e = excess_entropy(causal.machine(), DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL, &budget)?;
    let (lo, hi) = args.k;
    let mut rows = (lo..=hi)
        .into_par_iter()
        .map(|k| {
            cycle_report(&memory, k, m.default_distribution(), units, &budget, e.value)
                .map(|c| SweepRow::Cost(c.report))
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.push(SweepRow::Limit {
        value: dissipation_limit(&memory, e.value, units),
        units,
        memory_id: memory.id().to_string(),
    });
    SweepRow::write_csv(&rows, output(args.output.as_deref())?)?;
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> CmdResult {
    let m = load::machine(&args.common.machine)?;
    let budget = load::budget(args.common.block_budget)?;
    let (causal, memory) = build_memory(&m, &args.memory, &budget)?;
    let mut cfg = SimConfig::new(memory, args.k, args.blocks, args.seed);
    cfg.default = m.default_distribution().clone();
    cfg.budget = budget;
    let (trace, ledger) = run_cycle(&cfg)?;
    if let Some(path) = &args.trace {
        let file = File::create(path).map_err(|e| io_failure(path, e))?;
        trace.write_csv(BufWriter::new(file))?;
    }

    let symbol_entropy = block_entropy(causal.machine(), 1, &budget)?;
    println!("{:<26} {:>18} {:>18}", "quantity", "analytic", "empirical");
    let row = |name: &str, analytic: String, empirical: String| println!("{name:<26} {analytic:>18} {empirical:>18}");
    row("H(X|S) per symbol", bits(causal.entropy_rate()), bits(ledger.conditional_entropy.bits));
    row("H(X) per symbol", bits(symbol_entropy), bits(ledger.symbol_entropy.bits));
    row("W_diss per block", bits(ledger.per_block.report.w_diss()), "-".into());
    row("net cost total", bits(ledger.cumulative_net), "-".into());
    row("battery balance", bits(ledger.battery_balance), "-".into());
    row("default reset chi2 p", "-".into(), format!("{:.6}", ledger.default_region.p_value));
    println!("blocks={} k={} seed={} samples={}", args.blocks, args.k, args.seed, ledger.conditional_entropy.samples);
    Ok(())
}

pub fn minimize(args: &MinimizeArgs) -> CmdResult {
    let m = load::machine(&args.common.machine)?;
    let c = minimize_to_causal(&m)?;
    let minimal = c.machine().clone().with_default_distribution(m.default_distribution().clone())?;
    let mut out = output(args.output.as_deref())?;
    writeln!(out, "{}", minimal.to_spec().to_json()?).map_err(|e| Failure { code: 1, message: e.to_string() })?;
    out.flush().map_err(|e| Failure { code: 1, message: e.to_string() })?;
    if args.output.is_some() {
        eprintln!("{} states -> {} causal states", m.num_states(), c.num_states());
    }
    Ok(())
}

pub fn memories() -> CmdResult {
    for s in MemoryRegistry::with_builtins().iter() {
        let mut name = s.name().to_string();
        if !s.aliases().is_empty() {
            name = format!("{name} ({})", s.aliases().join(", "));
        }
        println!("{name:<36} {}", s.description());
    }
    Ok(())
}
