use crate::error::{Error, Result};

/// Dense joint probability table over named discrete axes, row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    names: Vec<String>,
    dims: Vec<usize>,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn new<S: Into<String>>(names: Vec<S>, dims: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != dims.len() {
            return Err(Error::InvalidDistribution("axis names and sizes differ in length".into()));
        }
        let size: usize = dims.iter().product();
        if size != probs.len() {
            return Err(Error::InvalidDistribution(format!("table has {} entries, axes require {size}", probs.len())));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateLabel { kind: "axis", label: n.clone() });
            }
        }
        crate::process::machine::check_distribution(&probs, "joint table")?;
        Ok(Self { names, dims, probs })
    }

    /// Skips the normalization check; callers construct tables by exact propagation.
    pub(crate) fn from_parts(names: Vec<String>, dims: Vec<usize>, probs: Vec<f64>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), probs.len());
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self { names, dims, probs }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn axis(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::Axis(name.to_string()))
    }

    pub fn axes<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.axis(n.as_ref())).collect()
    }

    /// Marginal over `axes` (in the given order), summing out every other axis.
    pub fn marginal(&self, axes: &[usize]) -> Vec<f64> {
        let size: usize = axes.iter().map(|&a| self.dims[a]).product();
        let mut out = vec![0.0; size];
        let mut idx = vec![0usize; self.dims.len()];
        for &p in &self.probs {
            if p != 0.0 {
                let mut o = 0;
                for &a in axes {
                    o = o * self.dims[a] + idx[a];
                }
                out[o] += p;
            }
            for d in (0..idx.len()).rev() {
                idx[d] += 1;
                if idx[d] < self.dims[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        out
    }

    /// Joint entropy of the listed axes, in bits. Duplicate axes count once.
    pub fn entropy_of(&self, axes: &[usize]) -> f64 {
        let mut axes = axes.to_vec();
        axes.sort_unstable();
        axes.dedup();
        if axes.is_empty() {
            return 0.0;
        }
        if axes.len() == self.dims.len() {
            return super::entropy_of(&self.probs);
        }
        super::entropy_of(&self.marginal(&axes))
    }

    /// H(target | given) = H(target, given) - H(given).
    pub fn conditional_entropy_of(&self, target: &[usize], given: &[usize]) -> f64 {
        let joint: Vec<usize> = target.iter().chain(given).copied().collect();
        self.entropy_of(&joint) - self.entropy_of(given)
    }

    /// I(A; B) = H(A) - H(A | B).
    pub fn mutual_information_of(&self, a: &[usize], b: &[usize]) -> f64 {
        self.entropy_of(a) - self.conditional_entropy_of(a, b)
    }
}
