//! Monte Carlo run of the generate-then-extract cycle with a work ledger.
//!
//! The generator emits `k` symbols per block onto a tape and updates its memory; the extractor
//! reads the same block, updates its own memory and resets the cells to default-distributed
//! symbols. Work is booked per block from the analytic costs; the realized symbols feed plug-in
//! entropy estimates that cross-check them.
//!
//! Random streams are independent ChaCha8 streams of one seed: the pattern symbols (shared by
//! both devices through the tape), the generator's memory kernel, the extractor's memory
//! kernel, and the reset draws.

use std::collections::{HashMap, VecDeque};
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::causal::PrescientMachine;
use crate::error::{Error, Result};
use crate::info::{entropy_of, excess_entropy, DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL};
use crate::process::sample::draw_index;
use crate::process::{BlockBudget, DefaultSymbolDistribution};
use crate::thermo::{cycle_report, CycleReport, Units};

const PATTERN_STREAM: u64 = 0;
const GENERATOR_STREAM: u64 = 1;
const EXTRACTOR_STREAM: u64 = 2;
const RESET_STREAM: u64 = 3;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub memory: PrescientMachine,
    pub k: usize,
    pub n_blocks: usize,
    pub seed: u64,
    pub default: DefaultSymbolDistribution,
    pub budget: BlockBudget,
    /// Upper bound on `n_blocks * k`.
    pub max_symbols: usize,
}

impl SimConfig {
    pub const DEFAULT_MAX_SYMBOLS: usize = 50_000_000;

    pub fn new(memory: PrescientMachine, k: usize, n_blocks: usize, seed: u64) -> Self {
        let default = memory.machine().default_distribution().clone();
        Self {
            memory,
            k,
            n_blocks,
            seed,
            default,
            budget: BlockBudget::default(),
            max_symbols: Self::DEFAULT_MAX_SYMBOLS,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n_blocks == 0 {
            return Err(Error::Config("block size and block count must be positive".into()));
        }
        if self.default.probs().len() != self.memory.machine().alphabet().len() {
            return Err(Error::Config("default distribution does not match the alphabet".into()));
        }
        match self.k.checked_mul(self.n_blocks) {
            Some(n) if n <= self.max_symbols => Ok(()),
            _ => Err(Error::Config(format!(
                "{} blocks of {} symbols exceed the limit of {} symbols",
                self.n_blocks, self.k, self.max_symbols
            ))),
        }
    }
}

/// Cells between the extractor and generator cursors. Cells behind the extractor have been
/// reset and are not stored.
#[derive(Debug, Clone, Default)]
pub struct TapeState {
    cells: VecDeque<usize>,
    generator_cursor: u64,
    extractor_cursor: u64,
}

impl TapeState {
    pub fn write(&mut self, symbol: usize) {
        self.cells.push_back(symbol);
        self.generator_cursor += 1;
    }

    /// Reads the next pattern cell, or `None` if the extractor has caught up.
    pub fn read(&mut self) -> Option<usize> {
        let x = self.cells.pop_front()?;
        self.extractor_cursor += 1;
        Some(x)
    }

    pub fn generator_cursor(&self) -> u64 {
        self.generator_cursor
    }

    pub fn extractor_cursor(&self) -> u64 {
        self.extractor_cursor
    }

    pub fn pending(&self) -> usize {
        self.cells.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockRecord {
    pub index: usize,
    pub symbols: Vec<usize>,
    pub gen_before: usize,
    pub gen_after: usize,
    pub ext_before: usize,
    pub ext_after: usize,
    pub battery_balance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    symbols: Vec<String>,
    states: Vec<String>,
    pub blocks: Vec<BlockRecord>,
}

pub const TRACE_COLUMNS: [&str; 7] = [
    "block_index",
    "symbols",
    "gen_state_before",
    "gen_state_after",
    "ext_state_before",
    "ext_state_after",
    "battery_balance_bits",
];

impl SimTrace {
    /// All emitted symbols in order.
    pub fn symbol_stream(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.symbols.iter().copied()).collect()
    }

    pub fn state_label(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TRACE_COLUMNS)?;
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
        for b in &self.blocks {
            let word: Vec<&str> = b.symbols.iter().map(|&x| self.symbols[x].as_str()).collect();
            w.write_record([
                b.index.to_string(),
                word.join(sep),
                self.states[b.gen_before].clone(),
                self.states[b.gen_after].clone(),
                self.states[b.ext_before].clone(),
                self.states[b.ext_after].clone(),
                Units::Bits.format(b.battery_balance),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate {
    pub bits: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl ChiSquareResult {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value > significance
    }
}

/// Pearson goodness-of-fit of `observed` counts against `expected` probabilities.
pub fn chi_square_test(observed: &[u64], expected: &[f64]) -> Result<ChiSquareResult> {
    if observed.len() != expected.len() {
        return Err(Error::Config("observed and expected categories differ".into()));
    }
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let mut statistic = 0.0;
    let mut categories = 0usize;
    for (&o, &p) in observed.iter().zip(expected) {
        if p > 0.0 {
            let e = p * n as f64;
            statistic += (o as f64 - e).powi(2) / e;
            categories += 1;
        } else if o > 0 {
            return Ok(ChiSquareResult { statistic: f64::INFINITY, dof: categories.max(1), p_value: 0.0 });
        }
    }
    let dof = categories.saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Config(e.to_string()))?;
        1.0 - dist.cdf(statistic)
    };
    Ok(ChiSquareResult { statistic, dof, p_value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Windowing {
    #[default]
    Overlapping,
    Disjoint,
}

/// Plug-in Shannon entropy of the empirical length-`block_len` word frequencies.
pub fn empirical_entropy(sequence: &[usize], block_len: usize, windowing: Windowing) -> Result<EntropyEstimate> {
    if block_len == 0 || sequence.len() < block_len {
        return Err(Error::InsufficientData { needed: block_len.max(1), got: sequence.len() });
    }
    let mut counts: HashMap<&[usize], usize> = HashMap::new();
    let step = match windowing {
        Windowing::Overlapping => 1,
        Windowing::Disjoint => block_len,
    };
    let mut samples = 0;
    let mut start = 0;
    while start + block_len <= sequence.len() {
        *counts.entry(&sequence[start..start + block_len]).or_insert(0) += 1;
        samples += 1;
        start += step;
    }
    let probs: Vec<f64> = counts.values().map(|&c| c as f64 / samples as f64).collect();
    Ok(EntropyEstimate { bits: entropy_of(&probs), samples })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkLedger {
    /// Analytic costs of one block, in bits.
    pub per_block: CycleReport,
    pub n_blocks: usize,
    /// n_blocks times the per-block net cost.
    pub cumulative_net: f64,
    /// Free energy left in the battery: W_out - W_tape - W_diss summed over blocks.
    pub battery_balance: f64,
    /// Plug-in H(X^{t+1} | S^t) from the generator's causal state before each symbol.
    pub conditional_entropy: EntropyEstimate,
    /// Plug-in H(X) over all emitted symbols.
    pub symbol_entropy: EntropyEstimate,
    /// Counts of the symbols written by the reset step.
    pub reset_counts: Vec<u64>,
    /// Reset symbols against the default distribution.
    pub default_region: ChiSquareResult,
}

fn battery_after(blocks: usize, net: f64) -> f64 {
    -(blocks as f64 * net)
}

pub fn run_cycle(cfg: &SimConfig) -> Result<(SimTrace, WorkLedger)> {
    cfg.validate()?;
    let r = &cfg.memory;
    let causal = r.base();
    let m = r.machine();
    let alphabet = m.alphabet().len();
    let excess = excess_entropy(causal.machine(), DEFAULT_EXCESS_L_MAX, DEFAULT_EXCESS_TOL, &cfg.budget)?;
    let per_block = cycle_report(r, cfg.k, &cfg.default, Units::Bits, &cfg.budget, excess.value)?;
    let net = per_block.net;

    let stream = |id| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(id);
        rng
    };
    let mut pattern_rng = stream(PATTERN_STREAM);
    let mut gen_rng = stream(GENERATOR_STREAM);
    let mut ext_rng = stream(EXTRACTOR_STREAM);
    let mut reset_rng = stream(RESET_STREAM);

    let emissions: Vec<Vec<f64>> = (0..causal.num_states()).map(|s| causal.machine().emission(s)).collect();
    let step = |state: usize, x: usize, rng: &mut ChaCha8Rng| {
        let row = r.kernel().update(state, x);
        row[draw_index(rng, row.iter().map(|&(_, w)| w))].0
    };

    let mut gen = draw_index(&mut pattern_rng, r.stationary().iter().copied());
    let gen_parent = r.parent(gen);
    let mut ext = draw_index(
        &mut ext_rng,
        r.stationary().iter().enumerate().map(|(i, &p)| if r.parent(i) == gen_parent { p } else { 0.0 }),
    );

    let mut tape = TapeState::default();
    let mut joint_counts = vec![0u64; causal.num_states() * alphabet];
    let mut symbol_counts = vec![0u64; alphabet];
    let mut reset_counts = vec![0u64; alphabet];
    let mut blocks = Vec::with_capacity(cfg.n_blocks);

    for b in 0..cfg.n_blocks {
        let (gen_before, ext_before) = (gen, ext);
        let mut word = Vec::with_capacity(cfg.k);
        for _ in 0..cfg.k {
            let s = r.parent(gen);
            let x = draw_index(&mut pattern_rng, emissions[s].iter().copied());
            joint_counts[s * alphabet + x] += 1;
            symbol_counts[x] += 1;
            gen = step(gen, x, &mut gen_rng);
            tape.write(x);
            word.push(x);
        }
        while let Some(x) = tape.read() {
            ext = step(ext, x, &mut ext_rng);
            reset_counts[draw_index(&mut reset_rng, cfg.default.probs().iter().copied())] += 1;
        }
        if r.parent(gen) != r.parent(ext) {
            return Err(Error::Desynchronized {
                block: b,
                generator: causal.machine().state_label(r.parent(gen)).to_string(),
                extractor: causal.machine().state_label(r.parent(ext)).to_string(),
            });
        }
        blocks.push(BlockRecord {
            index: b,
            symbols: word,
            gen_before,
            gen_after: gen,
            ext_before,
            ext_after: ext,
            battery_balance: battery_after(b + 1, net),
        });
    }

    let total = (cfg.n_blocks * cfg.k) as f64;
    let freq = |c: &[u64]| c.iter().map(|&n| n as f64 / total).collect::<Vec<_>>();
    let state_freq: Vec<f64> =
        joint_counts.chunks(alphabet).map(|row| row.iter().sum::<u64>() as f64 / total).collect();
    let conditional = (entropy_of(&freq(&joint_counts)) - entropy_of(&state_freq)).max(0.0);
    let samples = cfg.n_blocks * cfg.k;
    let ledger = WorkLedger {
        n_blocks: cfg.n_blocks,
        cumulative_net: cfg.n_blocks as f64 * net,
        battery_balance: battery_after(cfg.n_blocks, net),
        conditional_entropy: EntropyEstimate { bits: conditional, samples },
        symbol_entropy: EntropyEstimate { bits: entropy_of(&freq(&symbol_counts)), samples },
        default_region: chi_square_test(&reset_counts, cfg.default.probs())?,
        reset_counts,
        per_block,
    };
    let trace = SimTrace { symbols: m.alphabet().symbols().to_vec(), states: m.states().to_vec(), blocks };
    Ok((trace, ledger))
}
