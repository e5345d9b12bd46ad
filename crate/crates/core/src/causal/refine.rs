use std::collections::BTreeMap;

use super::checks::check_prescience;
use super::minimize::CausalMachine;
use crate::error::{Error, Result};
use crate::process::machine::NORMALIZATION_TOL;
use crate::process::{stationary_distribution, BlockBudget, Edge, ValidatedMachine};

/// Horizon up to which refinements are checked for prescience.
pub const PRESCIENCE_HORIZON: usize = 6;
pub const PRESCIENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SubState {
    pub label: String,
    /// Index of the causal state this sub-state refines.
    pub parent: usize,
}

/// Fine-graining of causal states into sub-states with a (possibly stochastic) update rule.
///
/// `updates[r][x]` is the distribution over sub-states entered when sub-state `r` emits
/// symbol `x`; it is empty when the parent causal state cannot emit `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementKernel {
    substates: Vec<SubState>,
    updates: Vec<Vec<Vec<(usize, f64)>>>,
}

impl RefinementKernel {
    pub fn new(substates: Vec<SubState>, updates: Vec<Vec<Vec<(usize, f64)>>>) -> Self {
        Self { substates, updates }
    }

    /// Every causal state is its own single sub-state.
    pub fn identity(c: &CausalMachine) -> Self {
        let m = c.machine();
        let substates =
            (0..m.num_states()).map(|s| SubState { label: m.state_label(s).to_string(), parent: s }).collect();
        let updates = (0..m.num_states())
            .map(|s| {
                (0..m.alphabet().len()).map(|x| c.successor(s, x).map(|t| vec![(t, 1.0)]).unwrap_or_default()).collect()
            })
            .collect();
        Self { substates, updates }
    }

    pub fn substates(&self) -> &[SubState] {
        &self.substates
    }

    pub fn update(&self, substate: usize, symbol: usize) -> &[(usize, f64)] {
        &self.updates[substate][symbol]
    }

    pub fn is_deterministic(&self) -> bool {
        self.updates.iter().flatten().all(|row| row.iter().filter(|(_, w)| *w > 0.0).count() <= 1)
    }

    fn validate(&self, c: &CausalMachine) -> Result<()> {
        let m = c.machine();
        let n = self.substates.len();
        if self.updates.len() != n {
            return Err(Error::Kernel(format!("{} update rows for {n} sub-states", self.updates.len())));
        }
        for s in 0..m.num_states() {
            if !self.substates.iter().any(|r| r.parent == s) {
                return Err(Error::Kernel(format!("causal state `{}` has no sub-states", m.state_label(s))));
            }
        }
        for (r, sub) in self.substates.iter().enumerate() {
            if sub.parent >= m.num_states() {
                return Err(Error::Kernel(format!("sub-state `{}` has no valid parent", sub.label)));
            }
            if self.updates[r].len() != m.alphabet().len() {
                return Err(Error::Kernel(format!("sub-state `{}` has the wrong number of symbol rows", sub.label)));
            }
            for x in 0..m.alphabet().len() {
                let row = &self.updates[r][x];
                if c.successor(sub.parent, x).is_none() {
                    continue;
                }
                let what = || format!("sub-state `{}` on symbol `{}`", sub.label, m.alphabet().label(x));
                if row.is_empty() {
                    return Err(Error::Kernel(format!("no update for {}", what())));
                }
                if let Some((t, w)) = row.iter().find(|(t, w)| *t >= n || !(w.is_finite() && *w >= 0.0)) {
                    return Err(Error::Kernel(format!("invalid target {t} with weight {w} for {}", what())));
                }
                let sum: f64 = row.iter().map(|(_, w)| w).sum();
                if (sum - 1.0).abs() > NORMALIZATION_TOL {
                    return Err(Error::Kernel(format!("weights for {} sum to {sum}", what())));
                }
            }
        }
        Ok(())
    }
}

/// A prescient memory: a refinement of the causal states together with its induced machine.
#[derive(Debug, Clone, PartialEq)]
pub struct PrescientMachine {
    id: String,
    base: CausalMachine,
    kernel: RefinementKernel,
    machine: ValidatedMachine,
    stationary: Vec<f64>,
}

impl PrescientMachine {
    /// The causal states used directly as memory.
    pub fn causal(c: &CausalMachine) -> Self {
        Self {
            id: "causal".into(),
            base: c.clone(),
            kernel: RefinementKernel::identity(c),
            machine: c.machine().clone(),
            stationary: c.stationary().to_vec(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn base(&self) -> &CausalMachine {
        &self.base
    }

    pub fn kernel(&self) -> &RefinementKernel {
        &self.kernel
    }

    pub fn machine(&self) -> &ValidatedMachine {
        &self.machine
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    pub fn num_states(&self) -> usize {
        self.machine.num_states()
    }

    pub fn parent(&self, substate: usize) -> usize {
        self.kernel.substates[substate].parent
    }

    pub fn parent_map(&self) -> Vec<usize> {
        self.kernel.substates.iter().map(|s| s.parent).collect()
    }

    /// H(R) over the stationary sub-state distribution.
    pub fn memory_entropy(&self) -> f64 {
        crate::info::entropy_of(&self.stationary)
    }

    /// True when the memory carries exactly the causal-state entropy.
    pub fn is_minimal_memory(&self) -> bool {
        (self.memory_entropy() - self.base.statistical_complexity()).abs() < PRESCIENCE_TOL
    }
}

/// Builds the machine over sub-states induced by `kernel`: sub-state `r` emits `x` with its
/// parent's probability and moves to `r'` with the kernel weight.
pub fn refine_memory(
    c: &CausalMachine,
    kernel: RefinementKernel,
    id: impl Into<String>,
    budget: &BlockBudget,
) -> Result<PrescientMachine> {
    kernel.validate(c)?;
    let base = c.machine();
    let mut edges = Vec::with_capacity(kernel.substates.len());
    for (r, sub) in kernel.substates.iter().enumerate() {
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for e in base.edges(sub.parent) {
            for &(t, w) in &kernel.updates[r][e.symbol] {
                if w > 0.0 {
                    *merged.entry((e.symbol, t)).or_insert(0.0) += e.prob * w;
                }
            }
        }
        edges.push(merged.into_iter().map(|((symbol, to), prob)| Edge { symbol, prob, to }).collect());
    }
    let labels = kernel.substates.iter().map(|s| s.label.clone()).collect();
    let machine =
        ValidatedMachine::from_parts(base.alphabet().clone(), labels, edges, base.default_distribution().clone())?;

    let horizon = PRESCIENCE_HORIZON.min(budget.max_len(base.alphabet().len())).max(1);
    let parents: Vec<usize> = kernel.substates.iter().map(|s| s.parent).collect();
    let report = check_prescience(&machine, &parents, c, horizon, PRESCIENCE_TOL, budget)?;
    if !report.prescient {
        let worst = report.worst_state.unwrap_or(0);
        return Err(Error::PrescienceViolation {
            state: machine.state_label(worst).to_string(),
            deviation: report.max_deviation,
            horizon,
        });
    }
    let stationary = stationary_distribution(&machine)?.probs().to_vec();
    Ok(PrescientMachine { id: id.into(), base: c.clone(), kernel, machine, stationary })
}
