use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::process::{stationary_distribution, Edge, ValidatedMachine};

/// Probabilities closer than this are treated as equal when grouping states.
pub const MERGE_TOL: f64 = 1e-9;

/// Minimal unifilar presentation: no two states share a future morph.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalMachine {
    machine: ValidatedMachine,
    stationary: Vec<f64>,
}

impl CausalMachine {
    pub fn machine(&self) -> &ValidatedMachine {
        &self.machine
    }

    pub fn num_states(&self) -> usize {
        self.machine.num_states()
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// C = H(pi) over causal states.
    pub fn statistical_complexity(&self) -> f64 {
        crate::info::entropy_of(&self.stationary)
    }

    /// h = sum_s pi(s) H(next symbol | s). Exact because the presentation is unifilar.
    pub fn entropy_rate(&self) -> f64 {
        self.stationary.iter().enumerate().map(|(s, &p)| p * crate::info::entropy_of(&self.machine.emission(s))).sum()
    }

    pub fn successor(&self, state: usize, symbol: usize) -> Option<usize> {
        self.machine.successor(state, symbol)
    }
}

/// Minimizes a unifilar machine by probabilistic partition refinement.
pub fn minimize_to_causal(m: &ValidatedMachine) -> Result<CausalMachine> {
    minimize_with_map(m).map(|(c, _)| c)
}

/// Like [`minimize_to_causal`], also returning the causal state of every input state
/// (`None` for transient states, which are dropped).
pub fn minimize_with_map(m: &ValidatedMachine) -> Result<(CausalMachine, Vec<Option<usize>>)> {
    if !m.is_unifilar() {
        return Err(Error::UnifilarRequired);
    }
    let live: Vec<usize> = (0..m.num_states()).filter(|&s| m.recurrent()[s]).collect();
    let emissions: Vec<Vec<f64>> = live.iter().map(|&s| m.emission(s)).collect();

    // initial partition: next-symbol distributions, in state order
    let mut block = vec![0usize; m.num_states()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, &s) in live.iter().enumerate() {
        let found =
            reps.iter().position(|&r| emissions[r].iter().zip(&emissions[i]).all(|(a, b)| (a - b).abs() < MERGE_TOL));
        block[s] = match found {
            Some(b) => b,
            None => {
                reps.push(i);
                reps.len() - 1
            }
        };
    }
    let mut count = reps.len();

    // refine on (own block, successor block per symbol) until stable
    loop {
        let mut signatures: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
        let mut next = vec![0usize; m.num_states()];
        for &s in &live {
            let mut sig = vec![Some(block[s])];
            sig.extend((0..m.alphabet().len()).map(|x| m.successor(s, x).map(|t| block[t])));
            let n = signatures.len();
            next[s] = *signatures.entry(sig).or_insert(n);
        }
        let refined = signatures.len();
        block = next;
        if refined == count {
            break;
        }
        count = refined;
    }

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for &s in &live {
        members[block[s]].push(s);
    }
    let labels: Vec<String> = members.iter().map(|ms| m.state_label(ms[0]).to_string()).collect();
    let edges: Vec<Vec<Edge>> = members
        .iter()
        .map(|ms| m.edges(ms[0]).iter().map(|e| Edge { symbol: e.symbol, prob: e.prob, to: block[e.to] }).collect())
        .collect();
    let machine = ValidatedMachine::from_parts(m.alphabet().clone(), labels, edges, m.default_distribution().clone())?;
    let stationary = stationary_distribution(&machine)?.probs().to_vec();
    let map = (0..m.num_states()).map(|s| m.recurrent()[s].then_some(block[s])).collect();
    Ok((CausalMachine { machine, stationary }, map))
}
