use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for row sums and distribution normalization.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Ordered set of distinct symbol labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        check_unique("symbol", &symbols)?;
        Ok(Self { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn label(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == label)
    }

    /// Renders a word of symbol indices, space separated unless every label is a single character.
    pub fn render(&self, word: &[usize]) -> String {
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
        word.iter().map(|&x| self.label(x)).collect::<Vec<_>>().join(sep)
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(symbols: Vec<String>) -> Result<Self> {
        Alphabet::new(symbols)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

fn check_unique(kind: &'static str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel { kind, label: l.clone() });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub from: String,
    pub symbol: String,
    pub p: f64,
    pub to: String,
}

impl TransitionSpec {
    pub fn new(from: &str, symbol: &str, p: f64, to: &str) -> Self {
        Self { from: from.into(), symbol: symbol.into(), p, to: to.into() }
    }
}

/// Machine description as read from (and written to) a machine file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineSpec {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub transitions: Vec<TransitionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unifilar: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_distribution: Option<BTreeMap<String, f64>>,
}

impl MachineSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<ValidatedMachine> {
        validate_machine(self)
    }
}

/// Per-symbol distribution of the blank tape cells.
#[derive(Debug, Clone, PartialEq)]
pub struct DefaultSymbolDistribution {
    probs: Vec<f64>,
}

impl DefaultSymbolDistribution {
    pub fn uniform(alphabet: &Alphabet) -> Self {
        let n = alphabet.len();
        Self { probs: vec![1.0 / n as f64; n] }
    }

    pub fn new(alphabet: &Alphabet, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != alphabet.len() {
            return Err(Error::InvalidDistribution(format!(
                "default distribution has {} entries for an alphabet of {}",
                probs.len(),
                alphabet.len()
            )));
        }
        check_distribution(&probs, "default distribution")?;
        Ok(Self { probs })
    }

    pub fn from_map(alphabet: &Alphabet, map: &BTreeMap<String, f64>) -> Result<Self> {
        let mut probs = vec![0.0; alphabet.len()];
        for (sym, &p) in map {
            let i = alphabet.index_of(sym).ok_or_else(|| Error::UnknownLabel { kind: "symbol", label: sym.clone() })?;
            probs[i] = p;
        }
        Self::new(alphabet, probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn entropy(&self) -> f64 {
        crate::info::entropy_of(&self.probs)
    }
}

pub(crate) fn check_distribution(probs: &[f64], what: &str) -> Result<()> {
    if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
        return Err(Error::InvalidDistribution(format!("{what} has invalid entry {p}")));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution(format!("{what} sums to {sum}")));
    }
    Ok(())
}

/// A positive-probability edge leaving a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub symbol: usize,
    pub prob: f64,
    pub to: usize,
}

/// A machine that passed validation. Every analysis takes one of these.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedMachine {
    alphabet: Alphabet,
    states: Vec<String>,
    edges: Vec<Vec<Edge>>,
    unifilar: bool,
    recurrent: Vec<bool>,
    default: DefaultSymbolDistribution,
}

pub fn validate_machine(spec: &MachineSpec) -> Result<ValidatedMachine> {
    let alphabet = Alphabet::new(spec.alphabet.symbols().iter().cloned())?;
    if spec.states.is_empty() {
        return Err(Error::NoStates);
    }
    check_unique("state", &spec.states)?;
    let state_index: HashMap<&str, usize> = spec.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let lookup_state = |label: &str| {
        state_index.get(label).copied().ok_or_else(|| Error::UnknownLabel { kind: "state", label: label.to_string() })
    };

    // (from, symbol, to) -> accumulated probability
    let mut merged: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
    let mut sums = vec![0.0; spec.states.len()];
    for t in &spec.transitions {
        let from = lookup_state(&t.from)?;
        let to = lookup_state(&t.to)?;
        let symbol = alphabet
            .index_of(&t.symbol)
            .ok_or_else(|| Error::UnknownLabel { kind: "symbol", label: t.symbol.clone() })?;
        if !(t.p.is_finite() && (0.0..=1.0).contains(&t.p)) {
            return Err(Error::InvalidProbability { state: t.from.clone(), p: t.p });
        }
        sums[from] += t.p;
        if t.p > 0.0 {
            *merged.entry((from, symbol, to)).or_insert(0.0) += t.p;
        }
    }
    for (i, &sum) in sums.iter().enumerate() {
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::RowSum { state: spec.states[i].clone(), sum });
        }
    }

    let mut edges = vec![Vec::new(); spec.states.len()];
    for ((from, symbol, to), prob) in merged {
        edges[from].push(Edge { symbol, prob, to });
    }
    let default = match &spec.default_distribution {
        Some(map) => DefaultSymbolDistribution::from_map(&alphabet, map)?,
        None => DefaultSymbolDistribution::uniform(&alphabet),
    };
    let machine = ValidatedMachine::from_parts(alphabet, spec.states.clone(), edges, default)?;
    if let Some(declared) = spec.unifilar {
        if declared != machine.unifilar {
            return Err(Error::UnifilarMismatch { declared, actual: machine.unifilar });
        }
    }
    Ok(machine)
}

impl ValidatedMachine {
    /// Builds a machine from already-indexed edges. Row sums are checked; zero-probability
    /// edges are dropped.
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        states: Vec<String>,
        edges: Vec<Vec<Edge>>,
        default: DefaultSymbolDistribution,
    ) -> Result<Self> {
        let edges: Vec<Vec<Edge>> =
            edges.into_iter().map(|row| row.into_iter().filter(|e| e.prob > 0.0).collect()).collect();
        for (i, row) in edges.iter().enumerate() {
            let sum: f64 = row.iter().map(|e| e.prob).sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::RowSum { state: states[i].clone(), sum });
            }
        }
        let unifilar = edges.iter().all(|row| {
            let mut seen = HashSet::new();
            row.iter().all(|e| seen.insert(e.symbol))
        });
        let recurrent = recurrent_states(states.len(), &edges)?;
        Ok(Self { alphabet, states, edges, unifilar, recurrent, default })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_label(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn edges(&self, state: usize) -> &[Edge] {
        &self.edges[state]
    }

    pub fn is_unifilar(&self) -> bool {
        self.unifilar
    }

    /// Membership of each state in the unique recurrent class.
    pub fn recurrent(&self) -> &[bool] {
        &self.recurrent
    }

    pub fn default_distribution(&self) -> &DefaultSymbolDistribution {
        &self.default
    }

    /// Replaces the default tape distribution.
    pub fn with_default_distribution(mut self, default: DefaultSymbolDistribution) -> Result<Self> {
        if default.probs().len() != self.alphabet.len() {
            return Err(Error::InvalidDistribution("default distribution does not match alphabet".into()));
        }
        self.default = default;
        Ok(self)
    }

    /// Probability of emitting each symbol from `state`.
    pub fn emission(&self, state: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.alphabet.len()];
        for e in &self.edges[state] {
            out[e.symbol] += e.prob;
        }
        out
    }

    /// Successor on `symbol` for unifilar machines.
    pub fn successor(&self, state: usize, symbol: usize) -> Option<usize> {
        self.edges[state].iter().find(|e| e.symbol == symbol).map(|e| e.to)
    }

    /// Symbol-labelled transition matrices, row-major `n x n`, one per symbol.
    pub fn labeled_matrices(&self) -> Vec<Vec<f64>> {
        let n = self.num_states();
        let mut mats = vec![vec![0.0; n * n]; self.alphabet.len()];
        for (i, row) in self.edges.iter().enumerate() {
            for e in row {
                mats[e.symbol][i * n + e.to] += e.prob;
            }
        }
        mats
    }

    pub fn to_spec(&self) -> MachineSpec {
        let transitions = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter().map(move |e| {
                    TransitionSpec::new(&self.states[i], self.alphabet.label(e.symbol), e.prob, &self.states[e.to])
                })
            })
            .collect();
        let uniform = DefaultSymbolDistribution::uniform(&self.alphabet);
        let default_distribution = (self.default != uniform)
            .then(|| self.alphabet.symbols().iter().cloned().zip(self.default.probs().iter().copied()).collect());
        MachineSpec {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            transitions,
            unifilar: Some(self.unifilar),
            default_distribution,
        }
    }
}

fn recurrent_states(n: usize, edges: &[Vec<Edge>]) -> Result<Vec<bool>> {
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (i, row) in edges.iter().enumerate() {
        for e in row {
            graph.add_edge(nodes[i], nodes[e.to], ());
        }
    }
    let sccs = tarjan_scc(&graph);
    let mut component = vec![0usize; n];
    for (c, members) in sccs.iter().enumerate() {
        for node in members {
            component[node.index()] = c;
        }
    }
    let closed: Vec<bool> = sccs
        .iter()
        .enumerate()
        .map(|(c, members)| members.iter().all(|node| edges[node.index()].iter().all(|e| component[e.to] == c)))
        .collect();
    let classes = closed.iter().filter(|&&c| c).count();
    if classes != 1 {
        return Err(Error::Disconnected { classes });
    }
    Ok((0..n).map(|i| closed[component[i]]).collect())
}
