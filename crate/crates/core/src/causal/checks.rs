use super::minimize::CausalMachine;
use super::refine::PrescientMachine;
use crate::error::{Error, Result};
use crate::info::entropy_of;
use crate::process::{
    future_distributions, joint_block_distribution, word_state_distribution, BlockBudget, ValidatedMachine,
};

/// Residual entropies below this count as zero.
pub const ZERO_ENTROPY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PrescienceReport {
    pub prescient: bool,
    /// Largest total-variation distance between a state's future and its causal state's.
    pub max_deviation: f64,
    pub worst_state: Option<usize>,
}

/// Compares every candidate state's length-`horizon` future word distribution with that of the
/// causal state it maps to.
pub fn check_prescience(
    candidate: &ValidatedMachine,
    map: &[usize],
    causal: &CausalMachine,
    horizon: usize,
    tol: f64,
    budget: &BlockBudget,
) -> Result<PrescienceReport> {
    if map.len() != candidate.num_states() {
        return Err(Error::Config(format!(
            "state map has {} entries for {} states",
            map.len(),
            candidate.num_states()
        )));
    }
    if candidate.alphabet() != causal.machine().alphabet() {
        return Err(Error::Config("candidate and causal machine use different alphabets".into()));
    }
    if let Some(&bad) = map.iter().find(|&&s| s >= causal.num_states()) {
        return Err(Error::Config(format!("state map refers to causal state {bad}")));
    }
    let ours = future_distributions(candidate, horizon, budget)?;
    let theirs = future_distributions(causal.machine(), horizon, budget)?;
    let mut max_deviation = 0.0;
    let mut worst_state = None;
    for (s, future) in ours.iter().enumerate() {
        let reference = &theirs[map[s]];
        let tv = 0.5 * future.iter().zip(reference).map(|(p, q)| (p - q).abs()).sum::<f64>();
        if tv > max_deviation {
            max_deviation = tv;
            worst_state = Some(s);
        }
    }
    Ok(PrescienceReport { prescient: max_deviation <= tol, max_deviation, worst_state })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminismReport {
    pub deterministic: bool,
    /// H(R^{t+k} | R^t, X^{t+1..t+k}) in bits.
    pub residual: f64,
}

pub fn check_determinism(m: &PrescientMachine, k: usize, budget: &BlockBudget) -> Result<DeterminismReport> {
    let joint = joint_block_distribution(m.machine(), k, budget)?;
    let residual = joint.final_given_initial_word().max(0.0);
    Ok(DeterminismReport { deterministic: residual < ZERO_ENTROPY_TOL, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynchronizationProfile {
    /// (L, H(R^t | last L symbols)) for L = 1..=L_max.
    pub entries: Vec<(usize, f64)>,
}

impl SynchronizationProfile {
    /// Smallest L with residual below [`ZERO_ENTROPY_TOL`], or `None` if unsynchronized at L_max.
    pub fn crypticity(&self) -> Option<usize> {
        self.entries.iter().find(|(_, h)| *h < ZERO_ENTROPY_TOL).map(|&(l, _)| l)
    }

    pub fn residual(&self, l: usize) -> Option<f64> {
        self.entries.iter().find(|(len, _)| *len == l).map(|&(_, h)| h)
    }
}

/// Residual uncertainty in the current state after observing the last L symbols.
pub fn synchronization_profile(
    m: &ValidatedMachine,
    l_max: usize,
    budget: &BlockBudget,
) -> Result<SynchronizationProfile> {
    let n = m.num_states();
    let mut entries = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let joint = word_state_distribution(m, l, budget)?;
        let words: Vec<f64> = joint.chunks(n).map(|c| c.iter().sum()).collect();
        let residual = (entropy_of(&joint) - entropy_of(&words)).max(0.0);
        entries.push((l, residual));
    }
    Ok(SynchronizationProfile { entries })
}
