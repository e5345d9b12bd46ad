//! Brute-force reference computations that share no code with the library's block machinery.
#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use patterncost::ValidatedMachine;

pub const HB_09: f64 = 0.468_995_593_589_281_1;

pub fn hb(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Stationary distribution by power iteration of the lazy chain (I + T)/2.
pub fn stationary(m: &ValidatedMachine) -> Vec<f64> {
    let n = m.num_states();
    let mut pi = vec![1.0 / n as f64; n];
    for _ in 0..20_000 {
        let mut next: Vec<f64> = pi.iter().map(|p| p / 2.0).collect();
        for (i, p) in pi.iter().enumerate() {
            for e in m.edges(i) {
                next[e.to] += p * e.prob / 2.0;
            }
        }
        pi = next;
    }
    pi
}

/// Every path of `k` steps from the stationary distribution: (start, word, end) -> probability.
pub fn paths(m: &ValidatedMachine, pi: &[f64], k: usize) -> HashMap<(usize, Vec<usize>, usize), f64> {
    fn walk(
        m: &ValidatedMachine,
        start: usize,
        state: usize,
        word: &mut Vec<usize>,
        p: f64,
        left: usize,
        out: &mut HashMap<(usize, Vec<usize>, usize), f64>,
    ) {
        if p == 0.0 {
            return;
        }
        if left == 0 {
            *out.entry((start, word.clone(), state)).or_insert(0.0) += p;
            return;
        }
        for e in m.edges(state) {
            word.push(e.symbol);
            walk(m, start, e.to, word, p * e.prob, left - 1, out);
            word.pop();
        }
    }
    let mut out = HashMap::new();
    for (s, &p) in pi.iter().enumerate() {
        walk(m, s, s, &mut Vec::new(), p, k, &mut out);
    }
    out
}

/// Entropy of the marginal obtained by mapping each outcome through `key`.
pub fn h<T, K: Hash + Eq>(joint: &HashMap<T, f64>, key: impl Fn(&T) -> K) -> f64 {
    let mut marginal: HashMap<K, f64> = HashMap::new();
    for (x, p) in joint {
        *marginal.entry(key(x)).or_insert(0.0) += p;
    }
    marginal.values().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

pub struct Routes {
    pub erasure: f64,
    pub predict_retrodict: f64,
    pub mutual_information: f64,
}

/// The three dissipation expressions evaluated on enumerated paths.
pub fn dissipation(m: &ValidatedMachine, k: usize) -> Routes {
    let pi = stationary(m);
    let j = paths(m, &pi, k);
    let h_all = h(&j, |x| x.clone());
    let h_r0 = h(&j, |x| x.0);
    let h_rk = h(&j, |x| x.2);
    let h_w = h(&j, |x| x.1.clone());
    let h_r0_w = h(&j, |x| (x.0, x.1.clone()));
    let h_w_rk = h(&j, |x| (x.1.clone(), x.2));
    Routes {
        erasure: (h_all - h_w_rk) - (h_all - h_r0_w),
        predict_retrodict: (h_r0_w - h_r0) - (h_w_rk - h_rk),
        mutual_information: (h_w + h_rk - h_w_rk) - (h_w + h_r0 - h_r0_w),
    }
}

pub fn block_entropy(m: &ValidatedMachine, l: usize) -> f64 {
    let pi = stationary(m);
    h(&paths(m, &pi, l), |x| x.1.clone())
}

pub fn excess_entropy(m: &ValidatedMachine, l: usize) -> f64 {
    2.0 * block_entropy(m, l) - block_entropy(m, 2 * l)
}

/// H(state after L symbols | those L symbols), by Bayes over enumerated paths.
pub fn sync_residual(m: &ValidatedMachine, l: usize) -> f64 {
    let pi = stationary(m);
    let j = paths(m, &pi, l);
    h(&j, |x| (x.1.clone(), x.2)) - h(&j, |x| x.1.clone())
}

pub fn stationary_entropy(pi: &[f64]) -> f64 {
    pi.iter().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

/// Random refinement of `c`: every causal state split into 1..=`max_split` sub-states, every
/// update row a random positive distribution over the target's sub-states.
pub fn random_kernel(c: &patterncost::CausalMachine, seed: u64, max_split: usize) -> patterncost::RefinementKernel {
    use patterncost::causal::SubState;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = c.machine();
    let mut substates = Vec::new();
    for s in 0..m.num_states() {
        for j in 0..rng.random_range(1..=max_split) {
            substates.push(SubState { label: format!("{}.{j}", m.state_label(s)), parent: s });
        }
    }
    let updates = substates
        .iter()
        .map(|sub| {
            (0..m.alphabet().len())
                .map(|x| match c.successor(sub.parent, x) {
                    None => Vec::new(),
                    Some(t) => {
                        let targets: Vec<usize> = (0..substates.len()).filter(|&i| substates[i].parent == t).collect();
                        let w: Vec<f64> = targets.iter().map(|_| rng.random_range(0.05..1.0)).collect();
                        let total: f64 = w.iter().sum();
                        targets.into_iter().zip(w).map(|(i, w)| (i, w / total)).collect()
                    }
                })
                .collect()
        })
        .collect();
    patterncost::RefinementKernel::new(substates, updates)
}
