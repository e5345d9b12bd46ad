//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use patterncost::causal::{check_determinism, refine_memory, synchronization_profile};
use patterncost::info::{excess_entropy, DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL};
use patterncost::process::DefaultSymbolDistribution;
use patterncost::sim::{run_cycle, SimConfig};
use patterncost::thermo::{cycle_report, dissipation_limit, extraction_work};
use patterncost::{
    dissipation_cost, fixtures, minimize_to_causal, BlockBudget, CausalMachine, MemoryRegistry, PrescientMachine,
    Units, ValidatedMachine,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn budget() -> BlockBudget {
    BlockBudget::default()
}

fn causal(m: &ValidatedMachine) -> CausalMachine {
    minimize_to_causal(m).expect("fixture minimizes")
}

fn memory(c: &CausalMachine, name: &str) -> PrescientMachine {
    MemoryRegistry::with_builtins().build(name, c, &budget()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn excess(c: &CausalMachine) -> f64 {
    excess_entropy(c.machine(), DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL, &budget()).unwrap().value
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(v: f64, target: f64, tol: f64) -> bool {
    (v - target).abs() < tol
}

fn identity_chain() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (name, m) in fixtures::named() {
        let c = causal(&m);
        for mem in ["causal", "last-two", "stochastic-split"] {
            let r = memory(&c, mem);
            for k in 1..=6 {
                let d =
                    dissipation_cost(&r, k, Units::Bits, &budget()).map_err(|e| format!("{name}/{mem}/k={k}: {e}"))?;
                let a = (d.erasure - d.predict_retrodict).abs();
                let b = (d.predict_retrodict - d.mutual_information).abs();
                check(a < 1e-9 && b < 1e-9, || format!("{name}/{mem}/k={k}: gaps {a:e}, {b:e}"))?;
                worst = worst.max(a).max(b);
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("max route gap {worst:.1e} bits over 72 cases in {elapsed:.2?}"))
}

fn indeterminism_cancels() -> Outcome {
    let c = causal(&fixtures::perturbed_coin(0.9));
    let split = memory(&c, "stochastic-split");
    let phase = memory(&c, "phase-split");
    let base = memory(&c, "causal");
    check(within(split.memory_entropy(), phase.memory_entropy(), 1e-9), || {
        format!("H(R) differs: {} vs {}", split.memory_entropy(), phase.memory_entropy())
    })?;
    for k in 1..=6 {
        let det = check_determinism(&split, k, &budget()).unwrap();
        check(within(det.residual, 1.0, 1e-9), || format!("k={k}: H(R'|R,X) = {}", det.residual))?;
        check(check_determinism(&phase, k, &budget()).unwrap().deterministic, || {
            format!("phase split indeterministic at k={k}")
        })?;
        let s = dissipation_cost(&split, k, Units::Bits, &budget()).unwrap().values();
        let p = dissipation_cost(&phase, k, Units::Bits, &budget()).unwrap().values();
        let b = dissipation_cost(&base, k, Units::Bits, &budget()).unwrap().values();
        for i in 0..3 {
            check(within(s[i], p[i], 1e-9) && within(s[i], b[i], 1e-9), || {
                format!("k={k} route {i}: stochastic {} vs deterministic {} vs causal {}", s[i], p[i], b[i])
            })?;
        }
    }
    Ok(format!("H(R'|R,X)=1 bit, H(R)={:.6}, W_diss equal to deterministic split for k=1..6", split.memory_entropy()))
}

fn simpler_is_better() -> Outcome {
    let c = causal(&fixtures::perturbed_coin(0.9));
    let wc = dissipation_cost(&memory(&c, "causal"), 2, Units::Bits, &budget()).unwrap().predict_retrodict;
    let wl = dissipation_cost(&memory(&c, "last-two"), 2, Units::Bits, &budget()).unwrap().predict_retrodict;
    check(within(wc, 0.468996, 1e-6), || format!("causal k=2: {wc}"))?;
    check(within(wl, 0.937992, 1e-6), || format!("last-two k=2: {wl}"))?;
    check(wc < wl, || format!("{wc} !< {wl}"))?;
    let mut kernels = 0;
    for m in [fixtures::perturbed_coin(0.9), fixtures::golden_mean()] {
        let c = causal(&m);
        let base = PrescientMachine::causal(&c);
        for seed in 0..20 {
            let r = refine_memory(&c, common::random_kernel(&c, seed, 3), "random", &budget())
                .map_err(|e| e.to_string())?;
            kernels += 1;
            for k in 1..=6 {
                let a = dissipation_cost(&base, k, Units::Bits, &budget()).unwrap().predict_retrodict;
                let b = dissipation_cost(&r, k, Units::Bits, &budget()).unwrap().predict_retrodict;
                check(a <= b + 1e-9, || format!("seed {seed} k={k}: causal {a} > refined {b}"))?;
            }
        }
    }
    Ok(format!("causal {wc:.6} < last-two {wl:.6}; causal minimal against {kernels} random kernels, k<=6"))
}

fn extraction_independent() -> Outcome {
    let registry = MemoryRegistry::with_builtins();
    let mut compared = 0;
    for (name, m) in fixtures::named() {
        let c = causal(&m);
        let d = DefaultSymbolDistribution::uniform(m.alphabet());
        let memories: Vec<PrescientMachine> = ["causal", "last-two", "stochastic-split", "phase-split"]
            .iter()
            .filter_map(|n| registry.build(n, &c, &budget()).ok())
            .collect();
        for k in 1..=6 {
            let reference = extraction_work(&memories[0], k, &d, Units::Bits, &budget()).unwrap().work;
            for r in &memories[1..] {
                let w = extraction_work(r, k, &d, Units::Bits, &budget()).map_err(|e| format!("{name}: {e}"))?.work;
                check((w - reference).abs() < 1e-12, || format!("{name}/{}/k={k}: {w} vs {reference}", r.id()))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} memory/k comparisons agree to 1e-12"))
}

fn large_k_limit() -> Outcome {
    let pc = causal(&fixtures::perturbed_coin(0.9));
    let p2 = causal(&fixtures::period_two());
    for (label, r, e) in [
        ("PC causal", memory(&pc, "causal"), excess(&pc)),
        ("PC last-two", memory(&pc, "last-two"), excess(&pc)),
        ("P2 causal", memory(&p2, "causal"), excess(&p2)),
    ] {
        let limit = dissipation_limit(&r, e, Units::Bits);
        for k in 4..=6 {
            let w = dissipation_cost(&r, k, Units::Bits, &budget()).unwrap().predict_retrodict;
            check(within(w, limit, 1e-6), || format!("{label} k={k}: {w} vs limit {limit}"))?;
        }
    }
    let gm = causal(&fixtures::golden_mean());
    let r = memory(&gm, "causal");
    let limit = dissipation_limit(&r, excess(&gm), Units::Bits);
    let gaps: Vec<f64> =
        (1..=8).map(|k| dissipation_cost(&r, k, Units::Bits, &budget()).unwrap().predict_retrodict - limit).collect();
    check(gaps.windows(2).all(|g| g[1].abs() <= g[0].abs() + 1e-12), || format!("GM gaps not monotone: {gaps:?}"))?;
    check(gaps[7].abs() < 1e-3, || format!("GM terminal gap {}", gaps[7]))?;
    Ok(format!("PC/P2 at limit from k=4; GM terminal gap {:.1e}", gaps[7].abs()))
}

fn cycle_balance() -> Outcome {
    let mut cases = 0;
    for (name, m) in fixtures::named() {
        let c = causal(&m);
        let e = excess(&c);
        let d = DefaultSymbolDistribution::uniform(m.alphabet());
        for mem in ["causal", "last-two", "stochastic-split"] {
            let r = memory(&c, mem);
            for k in 1..=6 {
                let cycle = cycle_report(&r, k, &d, Units::Bits, &budget(), e).map_err(|e| e.to_string())?;
                let w = cycle.report.w_diss();
                check(cycle.net.to_bits() == w.to_bits() && (cycle.net - w).abs() < 1e-12, || {
                    format!("{name}/{mem}/k={k}: net {} vs W_diss {w}", cycle.net)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("net == W_diss bitwise in {cases} cases"))
}

fn minimization() -> Outcome {
    let pc = causal(&fixtures::perturbed_coin_two_symbol(0.9));
    check(pc.num_states() == 2, || format!("PC minimized to {} states", pc.num_states()))?;
    check(within(pc.statistical_complexity(), 1.0, 1e-9), || format!("PC C = {}", pc.statistical_complexity()))?;
    let gm = causal(&fixtures::golden_mean());
    check(within(gm.statistical_complexity(), 0.918296, 1e-6), || format!("GM C = {}", gm.statistical_complexity()))?;
    check(within(gm.entropy_rate(), 0.666667, 1e-6), || format!("GM h = {}", gm.entropy_rate()))?;
    let fc = causal(&fixtures::fair_coin_redundant());
    let e = excess(&fc);
    check(fc.statistical_complexity() == 0.0 && e.abs() < 1e-12, || {
        format!("FC C = {}, E = {e}", fc.statistical_complexity())
    })?;
    Ok(format!(
        "PC 4->2 states C={:.9}; GM C={:.6} h={:.6}; FC C=0 E=0",
        pc.statistical_complexity(),
        gm.statistical_complexity(),
        gm.entropy_rate()
    ))
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let c = causal(&fixtures::perturbed_coin(0.9));
    let cfg = SimConfig::new(memory(&c, "causal"), 1, 100_000, 42);
    let (_, ledger) = run_cycle(&cfg).map_err(|e| e.to_string())?;
    let h = ledger.conditional_entropy.bits;
    check(within(h, 0.468996, 0.01), || format!("empirical H(X|S) = {h}"))?;
    let chi = ledger.default_region;
    check(chi.passes(1e-3), || format!("default region chi-square p = {}", chi.p_value))?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("H(X|S) = {h:.6}, reset chi-square p = {:.3}, {elapsed:.2?}", chi.p_value))
}

fn synchronization() -> Outcome {
    let mut profiles = Vec::new();
    for (name, m) in fixtures::named() {
        let c = causal(&m);
        let p = synchronization_profile(c.machine(), 6, &budget()).unwrap();
        for &(l, h) in &p.entries {
            let oracle = common::sync_residual(c.machine(), l);
            check(within(h, oracle, 1e-12), || format!("{name} L={l}: {h} vs Bayes {oracle}"))?;
        }
        profiles.push((name, p));
    }
    let residuals = |n: &str| -> Vec<f64> {
        profiles.iter().find(|(name, _)| *name == n).unwrap().1.entries.iter().map(|&(_, h)| h).collect()
    };
    for n in ["PC", "P2"] {
        let r = residuals(n);
        check(r[0] < 1e-9, || format!("{n} residual at L=1 is {}", r[0]))?;
    }
    let gm = residuals("GM");
    check(gm.windows(2).all(|w| w[1] < w[0]), || format!("GM profile not strictly decreasing over L=1..6: {gm:?}"))?;
    check(gm[5] < 1e-3, || format!("GM residual at L=6 is {}", gm[5]))?;
    Ok(format!("PC, P2 synchronized at L=1; GM residuals {gm:?}"))
}

fn determinism() -> Outcome {
    for (name, m) in fixtures::named() {
        let r = PrescientMachine::causal(&causal(&m));
        for k in 1..=6 {
            let d = check_determinism(&r, k, &budget()).unwrap();
            check(d.deterministic, || format!("{name} k={k}: residual {}", d.residual))?;
        }
    }
    let split = memory(&causal(&fixtures::perturbed_coin(0.9)), "stochastic-split");
    let d = check_determinism(&split, 1, &budget()).unwrap();
    check(!d.deterministic && within(d.residual, 1.0, 1e-12), || format!("stochastic split residual {}", d.residual))?;
    Ok(format!("causal fixtures deterministic; stochastic split residual {:.9} bits", d.residual))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("dissipation identity chain", identity_chain),
        ("indeterminism cancellation", indeterminism_cancels),
        ("causal states dissipate least", simpler_is_better),
        ("extraction memory-independence", extraction_independent),
        ("large-k dissipation limit", large_k_limit),
        ("cycle balance", cycle_balance),
        ("causal minimization", minimization),
        ("Monte Carlo consistency", monte_carlo),
        ("synchronization", synchronization),
        ("determinism check", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
