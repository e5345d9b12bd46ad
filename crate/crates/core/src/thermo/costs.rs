use super::report::CostReport;
use super::routes::dissipation_routes;
use super::units::Units;
use crate::causal::{CausalMachine, PrescientMachine};
use crate::error::{Error, Result};
use crate::process::{joint_block_distribution, BlockBudget, DefaultSymbolDistribution};

/// Largest allowed disagreement between equivalent entropy expressions, in bits.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Free-energy change of the tape, k [H(X_dflt) - h], in bits. Shared by writing and erasing.
fn tape_free_energy_bits(c: &CausalMachine, k: usize, default: &DefaultSymbolDistribution) -> f64 {
    k as f64 * (default.entropy() - c.entropy_rate())
}

/// Minimal work to write `k` pattern symbols over default-distributed tape cells.
pub fn generation_tape_cost(c: &CausalMachine, k: usize, default: &DefaultSymbolDistribution, units: Units) -> f64 {
    units.from_bits(tape_free_energy_bits(c, k, default))
}

/// Dissipation of a `k`-symbol memory update, by each route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationCost {
    pub erasure: f64,
    pub predict_retrodict: f64,
    pub mutual_information: f64,
}

impl DissipationCost {
    pub fn values(&self) -> [f64; 3] {
        [self.erasure, self.predict_retrodict, self.mutual_information]
    }

    /// Largest pairwise disagreement between routes.
    pub fn spread(&self) -> f64 {
        let v = self.values();
        let max = v.iter().copied().fold(f64::MIN, f64::max);
        let min = v.iter().copied().fold(f64::MAX, f64::min);
        max - min
    }
}

pub fn dissipation_cost(r: &PrescientMachine, k: usize, units: Units, budget: &BlockBudget) -> Result<DissipationCost> {
    let joint = joint_block_distribution(r.machine(), k, budget)?;
    let [erasure, predict_retrodict, mutual_information] = dissipation_routes().map(|route| route.evaluate(&joint));
    let bits = DissipationCost { erasure, predict_retrodict, mutual_information };
    if (erasure - predict_retrodict).abs() >= IDENTITY_TOL
        || (predict_retrodict - mutual_information).abs() >= IDENTITY_TOL
    {
        return Err(Error::Identity(format!(
            "dissipation routes disagree for memory `{}` at k={k}: {:?}",
            r.id(),
            bits.values()
        )));
    }
    Ok(DissipationCost {
        erasure: units.from_bits(erasure),
        predict_retrodict: units.from_bits(predict_retrodict),
        mutual_information: units.from_bits(mutual_information),
    })
}

/// Large-k dissipation H(R) - E.
pub fn dissipation_limit(r: &PrescientMachine, excess_entropy: f64, units: Units) -> f64 {
    units.from_bits(r.memory_entropy() - excess_entropy)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionWork {
    /// Work released to the battery (positive = released).
    pub work: f64,
    /// H(R^t, X-block | R^{t+k}) in bits, computed from the joint table.
    pub joint_given_final: f64,
    /// k h + H(R^{t+k} | R^t, X-block) in bits; must equal `joint_given_final`.
    pub predicted: f64,
}

pub fn extraction_work(
    r: &PrescientMachine,
    k: usize,
    default: &DefaultSymbolDistribution,
    units: Units,
    budget: &BlockBudget,
) -> Result<ExtractionWork> {
    let joint = joint_block_distribution(r.machine(), k, budget)?;
    let joint_given_final = joint.initial_word_given_final();
    let predicted = k as f64 * r.base().entropy_rate() + joint.final_given_initial_word();
    if (joint_given_final - predicted).abs() >= IDENTITY_TOL {
        return Err(Error::Identity(format!(
            "extractor entropy H(R,X|R')={joint_given_final} differs from k h + H(R'|R,X)={predicted} for memory `{}`",
            r.id()
        )));
    }
    Ok(ExtractionWork {
        work: units.from_bits(tape_free_energy_bits(r.base(), k, default)),
        joint_given_final,
        predicted,
    })
}

/// A cost report plus the net balance of one generate-then-extract cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub report: CostReport,
    /// W_tape + W_diss - W_out; equals W_diss.
    pub net: f64,
    /// W_diss of the causal memory for the same k.
    pub causal_dissipation: f64,
    /// Whether this memory dissipates no more than the causal states.
    pub achieves_causal_minimum: bool,
}

pub fn cycle_report(
    r: &PrescientMachine,
    k: usize,
    default: &DefaultSymbolDistribution,
    units: Units,
    budget: &BlockBudget,
    excess_entropy: f64,
) -> Result<CycleReport> {
    let w_tape = generation_tape_cost(r.base(), k, default, units);
    let diss = dissipation_cost(r, k, units, budget)?;
    let out = extraction_work(r, k, default, units, budget)?;
    let report = CostReport {
        k,
        w_tape,
        w_diss_erasure: diss.erasure,
        w_diss_predict_retrodict: diss.predict_retrodict,
        w_diss_mutual_information: diss.mutual_information,
        w_out: out.work,
        w_diss_limit: dissipation_limit(r, excess_entropy, units),
        units,
        memory_id: r.id().to_string(),
    };
    // W_tape and W_out are the same expression, so the difference is exactly zero
    let net = report.w_diss() + (report.w_tape - report.w_out);
    let causal_dissipation = dissipation_cost(&PrescientMachine::causal(r.base()), k, units, budget)?.predict_retrodict;
    let achieves_causal_minimum = diss.predict_retrodict <= causal_dissipation + units.from_bits(IDENTITY_TOL);
    Ok(CycleReport { report, net, causal_dissipation, achieves_causal_minimum })
}
