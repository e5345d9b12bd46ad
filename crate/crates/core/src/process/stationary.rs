use nalgebra::{DMatrix, DVector};

use super::machine::{ValidatedMachine, NORMALIZATION_TOL};
use crate::error::{Error, Result};

/// Stationary state distribution of a validated machine.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    probs: Vec<f64>,
}

impl StationaryDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn entropy(&self) -> f64 {
        crate::info::entropy_of(&self.probs)
    }
}

/// Solves `pi T = pi`, `sum(pi) = 1` where `T` is the symbol-marginalized transition matrix.
///
/// One balance equation is redundant for an irreducible chain and is replaced by the
/// normalization row.
pub fn stationary_distribution(m: &ValidatedMachine) -> Result<StationaryDistribution> {
    let n = m.num_states();
    // A = T^T - I
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        a[(i, i)] -= 1.0;
        for e in m.edges(i) {
            a[(e.to, i)] += e.prob;
        }
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let x = a.clone().lu().solve(&b).ok_or(Error::SingularSolve)?;

    let mut probs: Vec<f64> = x.iter().map(|&p| if p.abs() < 1e-15 { 0.0 } else { p }).collect();
    if probs.iter().any(|p| !p.is_finite() || *p < -1e-9) {
        return Err(Error::SingularSolve);
    }
    for p in probs.iter_mut() {
        *p = p.max(0.0);
    }
    let sum: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= sum);

    let pi = &probs;
    let residual = (0..n)
        .map(|j| {
            let flow: f64 =
                (0..n).flat_map(|i| m.edges(i).iter().filter(move |e| e.to == j).map(move |e| pi[i] * e.prob)).sum();
            (flow - pi[j]).abs()
        })
        .fold(0.0, f64::max);
    if residual > NORMALIZATION_TOL * n as f64 * 10.0 {
        return Err(Error::SingularSolve);
    }
    Ok(StationaryDistribution { probs })
}
