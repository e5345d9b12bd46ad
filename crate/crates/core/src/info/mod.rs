//! Shannon entropy calculus on finite tables and process-level rates.
//!
//! All quantities are in bits, with the convention `0 log 0 = 0` so that forbidden words
//! contribute nothing.

mod table;

pub use table::JointTable;

use crate::causal::minimize_to_causal;
use crate::error::{Error, Result};
use crate::process::{word_distribution, BlockBudget, ValidatedMachine};

/// Distribution over labelled outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    labels: Vec<String>,
    probs: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new<S: Into<String>>(labels: Vec<S>, probs: Vec<f64>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != probs.len() {
            return Err(Error::InvalidDistribution("labels and probabilities differ in length".into()));
        }
        crate::process::machine::check_distribution(&probs, "distribution")?;
        Ok(Self { labels, probs })
    }

    /// Outcomes labelled by their index.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        Self::new((0..probs.len()).map(|i| i.to_string()).collect(), probs)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Shannon entropy in bits of a non-negative weight vector.
pub fn entropy_of(probs: &[f64]) -> f64 {
    let h: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
    // exact zero instead of -0.0 for point masses
    h.max(0.0)
}

pub fn entropy(d: &FiniteDistribution) -> f64 {
    entropy_of(&d.probs)
}

/// H(target | given) over named axes of a joint table.
pub fn conditional_entropy<S: AsRef<str>>(table: &JointTable, target: &[S], given: &[S]) -> Result<f64> {
    let t = table.axes(target)?;
    let g = table.axes(given)?;
    Ok(table.conditional_entropy_of(&t, &g))
}

/// I(A; B) over named axes of a joint table.
pub fn mutual_information<S: AsRef<str>>(table: &JointTable, a: &[S], b: &[S]) -> Result<f64> {
    let a = table.axes(a)?;
    let b = table.axes(b)?;
    Ok(table.mutual_information_of(&a, &b))
}

/// Entropy rate h = sum_s pi(s) H(next symbol | s) on the minimized presentation.
pub fn entropy_rate(m: &ValidatedMachine) -> Result<f64> {
    let causal = minimize_to_causal(m)?;
    Ok(causal.entropy_rate())
}

/// H(X^{1..len}) of the stationary process.
pub fn block_entropy(m: &ValidatedMachine, len: usize, budget: &BlockBudget) -> Result<f64> {
    if len == 0 {
        return Ok(0.0);
    }
    Ok(entropy_of(&word_distribution(m, len, budget)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcessEntropy {
    /// Best estimate of E in bits.
    pub value: f64,
    /// Smallest L whose E(L) was confirmed by E(L+1) within tolerance; `None` if `L_max` was
    /// reached first.
    pub converged_at: Option<usize>,
    /// E(L) for L = 1, 2, ...
    pub history: Vec<(usize, f64)>,
}

impl ExcessEntropy {
    pub fn converged(&self) -> bool {
        self.converged_at.is_some()
    }
}

pub const DEFAULT_EXCESS_L_MAX: usize = 12;
pub const DEFAULT_EXCESS_TOL: f64 = 1e-9;

/// E(L) = I(X^{-L+1..0}; X^{1..L}) = 2 H(L) - H(2L), increased until successive values agree
/// within `tol`.
pub fn excess_entropy(m: &ValidatedMachine, l_max: usize, tol: f64, budget: &BlockBudget) -> Result<ExcessEntropy> {
    if l_max == 0 {
        return Err(Error::Config("L_max must be positive".into()));
    }
    let mut history = Vec::new();
    let mut previous: Option<f64> = None;
    for l in 1..=l_max {
        let e = (2.0 * block_entropy(m, l, budget)? - block_entropy(m, 2 * l, budget)?).max(0.0);
        history.push((l, e));
        if let Some(prev) = previous {
            if (e - prev).abs() < tol {
                return Ok(ExcessEntropy { value: e, converged_at: Some(l - 1), history });
            }
        }
        previous = Some(e);
    }
    let value = previous.unwrap_or(0.0);
    Ok(ExcessEntropy { value, converged_at: None, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::process::joint_block_distribution;
    use approx::assert_abs_diff_eq;

    const HB_09: f64 = 0.468_995_593_589_281_1;

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&FiniteDistribution::from_probs(vec![0.5, 0.5]).unwrap()), 1.0);
        assert_eq!(entropy(&FiniteDistribution::from_probs(vec![1.0, 0.0]).unwrap()), 0.0);
        let h = entropy(&FiniteDistribution::from_probs(vec![0.9, 0.1]).unwrap());
        assert_abs_diff_eq!(h, 0.468996, epsilon = 5e-7);
    }

    #[test]
    fn invalid_distribution_rejected() {
        assert!(FiniteDistribution::from_probs(vec![0.5, 0.4]).is_err());
        assert!(FiniteDistribution::from_probs(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn conditional_entropy_examples() {
        // X uniform, Y independent with (0.3, 0.7)
        let probs = vec![0.15, 0.35, 0.15, 0.35];
        let t = JointTable::new(vec!["X", "Y"], vec![2, 2], probs).unwrap();
        assert_abs_diff_eq!(conditional_entropy(&t, &["X"], &["Y"]).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mutual_information(&t, &["X"], &["Y"]).unwrap(), 0.0, epsilon = 1e-12);

        let copy = JointTable::new(vec!["X", "Y"], vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(conditional_entropy(&copy, &["X"], &["Y"]).unwrap(), 0.0);
        assert_abs_diff_eq!(mutual_information(&copy, &["X"], &["Y"]).unwrap(), 1.0, epsilon = 1e-12);

        assert!(matches!(conditional_entropy(&copy, &["Z"], &["Y"]), Err(Error::Axis(a)) if a == "Z"));
    }

    #[test]
    fn perturbed_coin_one_step_measures() {
        let j = joint_block_distribution(&fixtures::perturbed_coin(0.9), 1, &BlockBudget::default()).unwrap();
        let h = conditional_entropy(j.table(), &["X1"], &["R0"]).unwrap();
        assert_abs_diff_eq!(h, HB_09, epsilon = 1e-12);
        let i = mutual_information(j.table(), &["X1"], &["R0"]).unwrap();
        assert_abs_diff_eq!(i, 1.0 - HB_09, epsilon = 1e-12);
        let i_rev = mutual_information(j.table(), &["R0"], &["X1"]).unwrap();
        assert_abs_diff_eq!(i, i_rev, epsilon = 1e-12);
    }

    #[test]
    fn entropy_rate_examples() {
        assert_abs_diff_eq!(entropy_rate(&fixtures::perturbed_coin(0.9)).unwrap(), HB_09, epsilon = 1e-12);
        assert_eq!(entropy_rate(&fixtures::period_two()).unwrap(), 0.0);
        // (2/3) * 1 + (1/3) * 0
        assert_abs_diff_eq!(entropy_rate(&fixtures::golden_mean()).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_rate_is_block_entropy_slope() {
        let budget = BlockBudget::default();
        for m in fixtures::all() {
            let slope = block_entropy(&m, 8, &budget).unwrap() - block_entropy(&m, 7, &budget).unwrap();
            assert_abs_diff_eq!(slope, entropy_rate(&m).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn excess_entropy_examples() {
        let budget = BlockBudget::default();
        let fc = excess_entropy(&fixtures::fair_coin(), 12, 1e-9, &budget).unwrap();
        assert_abs_diff_eq!(fc.value, 0.0, epsilon = 1e-12);

        let pc = excess_entropy(&fixtures::perturbed_coin(0.9), 12, 1e-9, &budget).unwrap();
        assert_abs_diff_eq!(pc.value, 1.0 - HB_09, epsilon = 1e-12);
        assert_eq!(pc.converged_at, Some(1));

        let p2 = excess_entropy(&fixtures::period_two(), 12, 1e-9, &budget).unwrap();
        assert_abs_diff_eq!(p2.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn excess_entropy_flags_non_convergence() {
        let e = excess_entropy(&fixtures::period_two(), 1, 1e-9, &BlockBudget::default()).unwrap();
        assert!(!e.converged());
        assert_abs_diff_eq!(e.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn excess_entropy_respects_budget() {
        // alphabet 2, budget 4 words: L = 1 needs 2-blocks, L = 2 needs 4-blocks (16 words)
        let err = excess_entropy(&fixtures::golden_mean(), 12, 1e-9, &BlockBudget::new(4)).unwrap_err();
        assert!(matches!(err, Error::BlockTooLarge { .. }));
    }
}
