use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::machine::ValidatedMachine;
use super::stationary::stationary_distribution;
use crate::error::Result;

/// A sampled trajectory. `states[0]` is the initial state and `states[i + 1]` is the state
/// entered after emitting `symbols[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePath {
    pub states: Vec<usize>,
    pub symbols: Vec<usize>,
}

/// Inverse-CDF draw; falls back to the last positive entry when rounding leaves `u` past the end.
pub(crate) fn draw_index<R: Rng + ?Sized>(rng: &mut R, weights: impl IntoIterator<Item = f64>) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, w) in weights.into_iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = i;
        if u < acc {
            return i;
        }
    }
    last
}

/// Draws `n` symbols from the stationary chain. Bit-identical for a given machine and seed.
pub fn sample_path(m: &ValidatedMachine, seed: u64, n: usize) -> Result<SamplePath> {
    let pi = stationary_distribution(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = draw_index(&mut rng, pi.probs().iter().copied());
    let mut states = Vec::with_capacity(n + 1);
    let mut symbols = Vec::with_capacity(n);
    states.push(state);
    for _ in 0..n {
        let edges = m.edges(state);
        let e = edges[draw_index(&mut rng, edges.iter().map(|e| e.prob))];
        symbols.push(e.symbol);
        state = e.to;
        states.push(state);
    }
    Ok(SamplePath { states, symbols })
}
