//! Reference machines used throughout the tests and examples.

use crate::process::{Alphabet, MachineSpec, TransitionSpec, ValidatedMachine};

fn build(alphabet: &[&str], states: &[&str], transitions: &[(&str, &str, f64, &str)]) -> ValidatedMachine {
    MachineSpec {
        alphabet: Alphabet::new(alphabet.iter().copied()).expect("fixture alphabet"),
        states: states.iter().map(|s| s.to_string()).collect(),
        transitions: transitions.iter().map(|&(f, x, p, t)| TransitionSpec::new(f, x, p, t)).collect(),
        unifilar: None,
        default_distribution: None,
    }
    .validate()
    .expect("fixture must validate")
}

/// Single state emitting "0" and "1" with probability 1/2.
pub fn fair_coin() -> ValidatedMachine {
    build(&["0", "1"], &["A"], &[("A", "0", 0.5, "A"), ("A", "1", 0.5, "A")])
}

/// Fair coin presented with two redundant states.
pub fn fair_coin_redundant() -> ValidatedMachine {
    build(
        &["0", "1"],
        &["A", "B"],
        &[("A", "0", 0.5, "B"), ("A", "1", 0.5, "A"), ("B", "0", 0.5, "A"), ("B", "1", 0.5, "B")],
    )
}

/// Perturbed coin: repeat the last symbol with probability `p`.
pub fn perturbed_coin(p: f64) -> ValidatedMachine {
    let q = 1.0 - p;
    build(&["L", "R"], &["L", "R"], &[("L", "L", p, "L"), ("L", "R", q, "R"), ("R", "R", p, "R"), ("R", "L", q, "L")])
}

/// Perturbed coin presented with states remembering the last two symbols (older first).
pub fn perturbed_coin_two_symbol(p: f64) -> ValidatedMachine {
    let q = 1.0 - p;
    build(
        &["L", "R"],
        &["LL", "LR", "RL", "RR"],
        &[
            ("LL", "L", p, "LL"),
            ("LL", "R", q, "LR"),
            ("LR", "R", p, "RR"),
            ("LR", "L", q, "RL"),
            ("RL", "L", p, "LL"),
            ("RL", "R", q, "LR"),
            ("RR", "R", p, "RR"),
            ("RR", "L", q, "RL"),
        ],
    )
}

/// Period-2 process "0101...".
pub fn period_two() -> ValidatedMachine {
    build(&["0", "1"], &["E", "O"], &[("E", "0", 1.0, "O"), ("O", "1", 1.0, "E")])
}

/// Golden mean process: no two consecutive "0"s.
pub fn golden_mean() -> ValidatedMachine {
    build(&["0", "1"], &["A", "B"], &[("A", "1", 0.5, "A"), ("A", "0", 0.5, "B"), ("B", "1", 1.0, "A")])
}

/// The four reference processes: fair coin, perturbed coin (p = 0.9), period-2, golden mean.
pub fn all() -> Vec<ValidatedMachine> {
    vec![fair_coin(), perturbed_coin(0.9), period_two(), golden_mean()]
}

/// Same as [`all`], with short names.
pub fn named() -> Vec<(&'static str, ValidatedMachine)> {
    vec![("FC", fair_coin()), ("PC", perturbed_coin(0.9)), ("P2", period_two()), ("GM", golden_mean())]
}
