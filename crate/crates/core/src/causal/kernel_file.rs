use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::minimize::CausalMachine;
use super::refine::{RefinementKernel, SubState};
use crate::error::{Error, Result};

/// Refinement kernel file.
///
/// ```json
/// {
///   "substates": {"L": ["L0", "L1"], "R": ["R0", "R1"]},
///   "rules": [
///     {"into": "L", "to": {"L0": 0.5, "L1": 0.5}},
///     {"from": "R1", "symbol": "L", "to": {"L1": 1.0}}
///   ]
/// }
/// ```
///
/// `substates` lists the sub-states of every causal state. A rule gives the sub-state weights
/// used when a transition enters causal state `into` from `from` (a sub-state or causal state
/// label) on `symbol`; each of the three selectors is optional. The most specific matching rule
/// wins. Transitions into a causal state with a single sub-state need no rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub substates: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub rules: Vec<KernelRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelRule {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub into: Option<String>,
    pub to: BTreeMap<String, f64>,
}

impl KernelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes an explicit per-(sub-state, symbol) rule for every transition of `kernel`.
    pub fn from_kernel(causal: &CausalMachine, kernel: &RefinementKernel) -> Self {
        let m = causal.machine();
        let mut substates: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for s in kernel.substates() {
            substates.entry(m.state_label(s.parent).to_string()).or_default().push(s.label.clone());
        }
        let mut rules = Vec::new();
        for (r, sub) in kernel.substates().iter().enumerate() {
            for x in 0..m.alphabet().len() {
                let row = kernel.update(r, x);
                if row.is_empty() {
                    continue;
                }
                rules.push(KernelRule {
                    from: Some(sub.label.clone()),
                    symbol: Some(m.alphabet().label(x).to_string()),
                    into: None,
                    to: row.iter().map(|&(t, w)| (kernel.substates()[t].label.clone(), w)).collect(),
                });
            }
        }
        Self { substates, rules }
    }

    pub fn resolve(&self, causal: &CausalMachine) -> Result<RefinementKernel> {
        let m = causal.machine();
        for key in self.substates.keys() {
            if m.state_index(key).is_none() {
                return Err(Error::Kernel(format!("`{key}` is not a causal state")));
            }
        }
        let mut substates = Vec::new();
        for s in 0..m.num_states() {
            let labels = self.substates.get(m.state_label(s)).ok_or_else(|| {
                Error::Kernel(format!("no sub-states listed for causal state `{}`", m.state_label(s)))
            })?;
            for l in labels {
                substates.push(SubState { label: l.clone(), parent: s });
            }
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, s) in substates.iter().enumerate() {
            if index.insert(s.label.as_str(), i).is_some() {
                return Err(Error::Kernel(format!("duplicate sub-state `{}`", s.label)));
            }
        }
        for rule in &self.rules {
            if let Some(f) = &rule.from {
                if !index.contains_key(f.as_str()) && m.state_index(f).is_none() {
                    return Err(Error::Kernel(format!("rule refers to unknown state `{f}`")));
                }
            }
            if let Some(x) = &rule.symbol {
                if m.alphabet().index_of(x).is_none() {
                    return Err(Error::Kernel(format!("rule refers to unknown symbol `{x}`")));
                }
            }
            if let Some(i) = &rule.into {
                if m.state_index(i).is_none() {
                    return Err(Error::Kernel(format!("rule refers to unknown causal state `{i}`")));
                }
            }
            for t in rule.to.keys() {
                if !index.contains_key(t.as_str()) {
                    return Err(Error::Kernel(format!("rule targets unknown sub-state `{t}`")));
                }
            }
        }

        let mut updates = Vec::with_capacity(substates.len());
        for sub in &substates {
            let mut row = Vec::with_capacity(m.alphabet().len());
            for x in 0..m.alphabet().len() {
                let Some(target) = causal.successor(sub.parent, x) else {
                    row.push(Vec::new());
                    continue;
                };
                let symbol = m.alphabet().label(x);
                let into = m.state_label(target);
                let parent = m.state_label(sub.parent);
                let score = |rule: &KernelRule| -> Option<(u8, u8, u8)> {
                    let from = match &rule.from {
                        None => 0,
                        Some(f) if *f == sub.label => 2,
                        Some(f) if f == parent => 1,
                        Some(_) => return None,
                    };
                    let sym = match &rule.symbol {
                        None => 0,
                        Some(s) if s == symbol => 1,
                        Some(_) => return None,
                    };
                    let dest = match &rule.into {
                        None => 0,
                        Some(i) if i == into => 1,
                        Some(_) => return None,
                    };
                    Some((from, sym, dest))
                };
                let mut best: Option<((u8, u8, u8), &KernelRule)> = None;
                let mut tied = false;
                for rule in &self.rules {
                    if let Some(sc) = score(rule) {
                        match best {
                            Some((b, _)) if sc < b => {}
                            Some((b, _)) if sc == b => tied = true,
                            _ => {
                                best = Some((sc, rule));
                                tied = false;
                            }
                        }
                    }
                }
                let weights = match best {
                    Some(_) if tied => {
                        return Err(Error::Kernel(format!("ambiguous rules for `{}` on `{symbol}`", sub.label)))
                    }
                    Some((_, rule)) => rule.to.iter().map(|(t, &w)| (index[t.as_str()], w)).collect(),
                    None => {
                        let candidates: Vec<usize> =
                            (0..substates.len()).filter(|&i| substates[i].parent == target).collect();
                        if candidates.len() != 1 {
                            return Err(Error::Kernel(format!("no rule for `{}` on `{symbol}`", sub.label)));
                        }
                        vec![(candidates[0], 1.0)]
                    }
                };
                row.push(weights);
            }
            updates.push(row);
        }
        Ok(RefinementKernel::new(substates, updates))
    }
}
