//! Named memory strategies. Each turns a causal machine into a refinement kernel; the
//! registry resolves a strategy by name at runtime.

use std::sync::Arc;

use super::kernel_file::KernelFile;
use super::minimize::CausalMachine;
use super::refine::{refine_memory, PrescientMachine, RefinementKernel, SubState};
use crate::error::{Error, Result};
use crate::process::BlockBudget;

pub trait MemoryStrategy: Send + Sync {
    fn name(&self) -> &str;

    fn aliases(&self) -> &[&str] {
        &[]
    }

    fn description(&self) -> &str;

    fn kernel(&self, causal: &CausalMachine) -> Result<RefinementKernel>;

    fn build(&self, causal: &CausalMachine, budget: &BlockBudget) -> Result<PrescientMachine> {
        refine_memory(causal, self.kernel(causal)?, self.name(), budget)
    }
}

/// Causal states as memory.
#[derive(Debug, Default, Clone, Copy)]
pub struct CausalMemory;

impl MemoryStrategy for CausalMemory {
    fn name(&self) -> &str {
        "causal"
    }

    fn description(&self) -> &str {
        "causal states (minimal prescient memory)"
    }

    fn kernel(&self, causal: &CausalMachine) -> Result<RefinementKernel> {
        Ok(RefinementKernel::identity(causal))
    }

    fn build(&self, causal: &CausalMachine, _budget: &BlockBudget) -> Result<PrescientMachine> {
        Ok(PrescientMachine::causal(causal))
    }
}

/// Splits each causal state by the causal state it was entered from. For an order-1 Markov
/// process whose causal state is the last symbol this remembers the last two symbols.
#[derive(Debug, Default, Clone, Copy)]
pub struct PredecessorSplit;

impl MemoryStrategy for PredecessorSplit {
    fn name(&self) -> &str {
        "predecessor-split"
    }

    fn aliases(&self) -> &[&str] {
        &["last-two"]
    }

    fn description(&self) -> &str {
        "deterministic: each causal state refined by its predecessor causal state"
    }

    fn kernel(&self, causal: &CausalMachine) -> Result<RefinementKernel> {
        let m = causal.machine();
        let n = m.num_states();
        let a = m.alphabet().len();
        // index[(state, predecessor)]
        let mut index = vec![None; n * n];
        let mut substates = Vec::new();
        for s in 0..n {
            for p in 0..n {
                if m.edges(p).iter().any(|e| e.to == s) {
                    index[s * n + p] = Some(substates.len());
                    substates.push(SubState { label: format!("{}|{}", m.state_label(s), m.state_label(p)), parent: s });
                }
            }
        }
        let updates = substates
            .iter()
            .map(|sub| {
                (0..a)
                    .map(|x| match causal.successor(sub.parent, x) {
                        Some(t) => vec![(index[t * n + sub.parent].expect("edge implies predecessor"), 1.0)],
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        Ok(RefinementKernel::new(substates, updates))
    }
}

/// Splits each causal state into `ways` sub-states drawn uniformly and independently of the
/// history at every update.
#[derive(Debug, Clone, Copy)]
pub struct StochasticSplit {
    pub ways: usize,
}

impl Default for StochasticSplit {
    fn default() -> Self {
        Self { ways: 2 }
    }
}

impl MemoryStrategy for StochasticSplit {
    fn name(&self) -> &str {
        "stochastic-split"
    }

    fn description(&self) -> &str {
        "indeterministic: each causal state split into equiprobable sub-states chosen afresh at every step"
    }

    fn kernel(&self, causal: &CausalMachine) -> Result<RefinementKernel> {
        split_kernel(causal, self.ways, |_, _| (0..self.ways).map(|j| (j, 1.0 / self.ways as f64)).collect())
    }
}

/// Deterministic two-way split by the parity of the time step. Carries the same extra bit as
/// [`StochasticSplit`] but updates deterministically.
#[derive(Debug, Default, Clone, Copy)]
pub struct PhaseSplit;

impl MemoryStrategy for PhaseSplit {
    fn name(&self) -> &str {
        "phase-split"
    }

    fn description(&self) -> &str {
        "deterministic: each causal state split by a free-running parity clock"
    }

    fn kernel(&self, causal: &CausalMachine) -> Result<RefinementKernel> {
        split_kernel(causal, 2, |_, phase| vec![(1 - phase, 1.0)])
    }
}

/// Sub-state `(s, j)` has index `s * ways + j`; `rule(x, j)` gives weights over the `j'` of the
/// successor causal state.
fn split_kernel(
    causal: &CausalMachine,
    ways: usize,
    rule: impl Fn(usize, usize) -> Vec<(usize, f64)>,
) -> Result<RefinementKernel> {
    if ways == 0 {
        return Err(Error::Kernel("split needs at least one way".into()));
    }
    let m = causal.machine();
    let mut substates = Vec::new();
    let mut updates = Vec::new();
    for s in 0..m.num_states() {
        for j in 0..ways {
            substates.push(SubState { label: format!("{}#{j}", m.state_label(s)), parent: s });
            updates.push(
                (0..m.alphabet().len())
                    .map(|x| match causal.successor(s, x) {
                        Some(t) => rule(x, j).into_iter().map(|(jj, w)| (t * ways + jj, w)).collect(),
                        None => Vec::new(),
                    })
                    .collect(),
            );
        }
    }
    Ok(RefinementKernel::new(substates, updates))
}

/// A kernel read from a file, resolved against the causal machine it is applied to.
#[derive(Debug, Clone)]
pub struct KernelFileStrategy {
    name: String,
    file: KernelFile,
}

impl KernelFileStrategy {
    pub fn new(name: impl Into<String>, file: KernelFile) -> Self {
        Self { name: name.into(), file }
    }

    pub fn from_path(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        Ok(Self::new(format!("kernel:{}", path.display()), KernelFile::from_path(path)?))
    }
}

impl MemoryStrategy for KernelFileStrategy {
    fn name(&self) -> &str {
        &self.name
    }

    fn description(&self) -> &str {
        "refinement kernel loaded from a file"
    }

    fn kernel(&self, causal: &CausalMachine) -> Result<RefinementKernel> {
        self.file.resolve(causal)
    }
}

#[derive(Clone, Default)]
pub struct MemoryRegistry {
    strategies: Vec<Arc<dyn MemoryStrategy>>,
}

impl MemoryRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::new();
        r.register(CausalMemory);
        r.register(PredecessorSplit);
        r.register(StochasticSplit::default());
        r.register(PhaseSplit);
        r
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register<S: MemoryStrategy + 'static>(&mut self, strategy: S) {
        self.strategies.retain(|s| s.name() != strategy.name());
        self.strategies.push(Arc::new(strategy));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn MemoryStrategy>> {
        self.strategies
            .iter()
            .find(|s| s.name() == name || s.aliases().contains(&name))
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn MemoryStrategy>> {
        self.strategies.iter()
    }

    pub fn build(&self, name: &str, causal: &CausalMachine, budget: &BlockBudget) -> Result<PrescientMachine> {
        self.get(name)?.build(causal, budget)
    }
}

impl std::fmt::Debug for MemoryRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}
