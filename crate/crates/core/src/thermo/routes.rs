//! Three algebraically equivalent expressions for the memory-update dissipation. Every cost
//! report evaluates all of them; disagreement beyond [`super::IDENTITY_TOL`] is an error.

use crate::process::JointBlockDistribution;

pub trait DissipationRoute: Send + Sync {
    fn name(&self) -> &'static str;

    /// Column name in cost-report CSV output.
    fn column(&self) -> &'static str;

    /// Dissipation in bits.
    fn evaluate(&self, joint: &JointBlockDistribution) -> f64;
}

/// Erase the old state given block and new state, minus the work recoverable from
/// indeterminism: H(R^t | X, R^{t+k}) - H(R^{t+k} | R^t, X).
#[derive(Debug, Clone, Copy)]
pub struct ErasureRoute;

impl DissipationRoute for ErasureRoute {
    fn name(&self) -> &'static str {
        "erasure"
    }

    fn column(&self) -> &'static str {
        "W_diss_eq2"
    }

    fn evaluate(&self, joint: &JointBlockDistribution) -> f64 {
        joint.initial_given_word_final() - joint.final_given_initial_word()
    }
}

/// Predictive minus retrodictive uncertainty: H(X | R^t) - H(X | R^{t+k}).
#[derive(Debug, Clone, Copy)]
pub struct PredictRetrodictRoute;

impl DissipationRoute for PredictRetrodictRoute {
    fn name(&self) -> &'static str {
        "predict-retrodict"
    }

    fn column(&self) -> &'static str {
        "W_diss_eq3"
    }

    fn evaluate(&self, joint: &JointBlockDistribution) -> f64 {
        joint.word_given_initial() - joint.word_given_final()
    }
}

/// I(X; R^{t+k}) - I(X; R^t).
#[derive(Debug, Clone, Copy)]
pub struct MutualInformationRoute;

impl DissipationRoute for MutualInformationRoute {
    fn name(&self) -> &'static str {
        "mutual-information"
    }

    fn column(&self) -> &'static str {
        "W_diss_eq5"
    }

    fn evaluate(&self, joint: &JointBlockDistribution) -> f64 {
        joint.word_info_final() - joint.word_info_initial()
    }
}

/// All routes, in cost-report column order.
pub fn dissipation_routes() -> [&'static dyn DissipationRoute; 3] {
    [&ErasureRoute, &PredictRetrodictRoute, &MutualInformationRoute]
}
