use super::machine::ValidatedMachine;
use super::stationary::stationary_distribution;
use crate::error::{Error, Result};
use crate::info::JointTable;

/// Largest number of words any block enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockBudget {
    pub max_words: usize,
}

impl BlockBudget {
    /// 2^16 words: sixteen binary symbols.
    pub const DEFAULT_MAX_WORDS: usize = 1 << 16;

    pub fn new(max_words: usize) -> Self {
        Self { max_words }
    }

    /// Number of words of length `k` over `alphabet` symbols, or `BlockTooLarge`.
    pub fn words(&self, alphabet: usize, k: usize) -> Result<usize> {
        let too_large = Error::BlockTooLarge { k, alphabet, max_words: self.max_words };
        let n = u32::try_from(k).ok().and_then(|k| alphabet.checked_pow(k)).ok_or(too_large)?;
        if n > self.max_words {
            return Err(Error::BlockTooLarge { k, alphabet, max_words: self.max_words });
        }
        Ok(n)
    }

    /// Longest block length that fits.
    pub fn max_len(&self, alphabet: usize) -> usize {
        if alphabet <= 1 {
            return 64;
        }
        let mut k = 0;
        while self.words(alphabet, k + 1).is_ok() {
            k += 1;
        }
        k
    }
}

impl Default for BlockBudget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_WORDS)
    }
}

/// Forward-propagates `rows` initial state vectors (row-major `rows x n`) through every word of
/// length `k`. Output layout is `[row][word][final_state]`, words indexed base-|alphabet| with
/// the earliest symbol most significant.
pub(crate) fn propagate(
    m: &ValidatedMachine,
    start: &[f64],
    rows: usize,
    k: usize,
    budget: &BlockBudget,
) -> Result<Vec<f64>> {
    let n = m.num_states();
    let a = m.alphabet().len();
    budget.words(a, k)?;
    debug_assert_eq!(start.len(), rows * n);
    let mats = m.labeled_matrices();
    let mut cur = start.to_vec();
    let mut words = 1usize;
    for _ in 0..k {
        let mut next = vec![0.0; rows * words * a * n];
        for r in 0..rows {
            for w in 0..words {
                let src = &cur[(r * words + w) * n..(r * words + w + 1) * n];
                if src.iter().all(|&p| p == 0.0) {
                    continue;
                }
                for (x, mat) in mats.iter().enumerate() {
                    let dst_off = ((r * words + w) * a + x) * n;
                    for (i, &p) in src.iter().enumerate() {
                        if p == 0.0 {
                            continue;
                        }
                        let row = &mat[i * n..(i + 1) * n];
                        for (j, &t) in row.iter().enumerate() {
                            if t != 0.0 {
                                next[dst_off + j] += p * t;
                            }
                        }
                    }
                }
            }
        }
        cur = next;
        words *= a;
    }
    Ok(cur)
}

/// Stationary probability of every word of length `len`, indexed base-|alphabet|.
pub fn word_distribution(m: &ValidatedMachine, len: usize, budget: &BlockBudget) -> Result<Vec<f64>> {
    let pi = stationary_distribution(m)?;
    let n = m.num_states();
    let table = propagate(m, pi.probs(), 1, len, budget)?;
    Ok(table.chunks(n).map(|c| c.iter().sum()).collect())
}

/// Stationary joint of a length-`len` word and the state reached after it, `[word][state]`.
pub fn word_state_distribution(m: &ValidatedMachine, len: usize, budget: &BlockBudget) -> Result<Vec<f64>> {
    let pi = stationary_distribution(m)?;
    propagate(m, pi.probs(), 1, len, budget)
}

/// Distribution of the next `len` symbols from each start state, `[state][word]`.
pub fn future_distributions(m: &ValidatedMachine, len: usize, budget: &BlockBudget) -> Result<Vec<Vec<f64>>> {
    let n = m.num_states();
    let mut identity = vec![0.0; n * n];
    for i in 0..n {
        identity[i * n + i] = 1.0;
    }
    let table = propagate(m, &identity, n, len, budget)?;
    let words = table.len() / (n * n);
    Ok((0..n).map(|s| table[s * words * n..(s + 1) * words * n].chunks(n).map(|c| c.iter().sum()).collect()).collect())
}

/// Exact stationary joint over (initial state, k symbols, final state).
#[derive(Debug, Clone, PartialEq)]
pub struct JointBlockDistribution {
    k: usize,
    num_states: usize,
    alphabet: usize,
    table: JointTable,
}

pub const INITIAL_AXIS: &str = "R0";
pub const FINAL_AXIS: &str = "Rk";

pub fn joint_block_distribution(
    m: &ValidatedMachine,
    k: usize,
    budget: &BlockBudget,
) -> Result<JointBlockDistribution> {
    if k == 0 {
        return Err(Error::Config("block length must be positive".into()));
    }
    let n = m.num_states();
    let a = m.alphabet().len();
    let pi = stationary_distribution(m)?;
    let mut start = vec![0.0; n * n];
    for (i, &p) in pi.probs().iter().enumerate() {
        start[i * n + i] = p;
    }
    let probs = propagate(m, &start, n, k, budget)?;
    let mut names = vec![INITIAL_AXIS.to_string()];
    names.extend((1..=k).map(|i| format!("X{i}")));
    names.push(FINAL_AXIS.to_string());
    let mut dims = vec![n];
    dims.extend(std::iter::repeat_n(a, k));
    dims.push(n);
    Ok(JointBlockDistribution { k, num_states: n, alphabet: a, table: JointTable::from_parts(names, dims, probs) })
}

impl JointBlockDistribution {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &JointTable {
        &self.table
    }

    pub fn num_words(&self) -> usize {
        self.alphabet.pow(self.k as u32)
    }

    /// Probability of (initial, word, final) with `word` given as a base-|alphabet| index.
    pub fn prob(&self, initial: usize, word: usize, final_state: usize) -> f64 {
        let n = self.num_states;
        self.table.probs()[(initial * self.num_words() + word) * n + final_state]
    }

    pub fn initial_axis(&self) -> usize {
        0
    }

    pub fn final_axis(&self) -> usize {
        self.k + 1
    }

    pub fn word_axes(&self) -> Vec<usize> {
        (1..=self.k).collect()
    }

    /// Marginal probability of each word.
    pub fn word_marginal(&self) -> Vec<f64> {
        self.table.marginal(&self.word_axes())
    }

    pub fn entropy_initial(&self) -> f64 {
        self.table.entropy_of(&[self.initial_axis()])
    }

    pub fn entropy_final(&self) -> f64 {
        self.table.entropy_of(&[self.final_axis()])
    }

    /// H(X-block | R^t)
    pub fn word_given_initial(&self) -> f64 {
        self.table.conditional_entropy_of(&self.word_axes(), &[self.initial_axis()])
    }

    /// H(X-block | R^{t+k})
    pub fn word_given_final(&self) -> f64 {
        self.table.conditional_entropy_of(&self.word_axes(), &[self.final_axis()])
    }

    /// H(R^{t+k} | R^t, X-block): zero exactly when updates are deterministic.
    pub fn final_given_initial_word(&self) -> f64 {
        let mut given = vec![self.initial_axis()];
        given.extend(self.word_axes());
        self.table.conditional_entropy_of(&[self.final_axis()], &given)
    }

    /// H(R^t | X-block, R^{t+k})
    pub fn initial_given_word_final(&self) -> f64 {
        let mut given = self.word_axes();
        given.push(self.final_axis());
        self.table.conditional_entropy_of(&[self.initial_axis()], &given)
    }

    /// I(X-block; R^t)
    pub fn word_info_initial(&self) -> f64 {
        self.table.mutual_information_of(&self.word_axes(), &[self.initial_axis()])
    }

    /// I(X-block; R^{t+k})
    pub fn word_info_final(&self) -> f64 {
        self.table.mutual_information_of(&self.word_axes(), &[self.final_axis()])
    }

    /// H(R^t, X-block | R^{t+k})
    pub fn initial_word_given_final(&self) -> f64 {
        let mut target = vec![self.initial_axis()];
        target.extend(self.word_axes());
        self.table.conditional_entropy_of(&target, &[self.final_axis()])
    }
}
