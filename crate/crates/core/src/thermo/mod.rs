//! Work costs of writing, remembering and erasing a pattern, in bits unless converted.

mod costs;
mod report;
mod routes;
mod units;

pub use costs::{
    cycle_report, dissipation_cost, dissipation_limit, extraction_work, generation_tape_cost, CycleReport,
    DissipationCost, ExtractionWork, IDENTITY_TOL,
};
pub use report::{CostReport, SweepRow, COST_COLUMNS};
pub use routes::{dissipation_routes, DissipationRoute, ErasureRoute, MutualInformationRoute, PredictRetrodictRoute};
pub use units::{Units, BOLTZMANN};
