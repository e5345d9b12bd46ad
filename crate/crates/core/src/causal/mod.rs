//! Causal states, prescient refinements of them, and the checks that certify a memory.

mod checks;
mod kernel_file;
mod minimize;
mod refine;
mod strategy;

pub use checks::{
    check_determinism, check_prescience, synchronization_profile, DeterminismReport, PrescienceReport,
    SynchronizationProfile, ZERO_ENTROPY_TOL,
};
pub use kernel_file::{KernelFile, KernelRule};
pub use minimize::{minimize_to_causal, minimize_with_map, CausalMachine, MERGE_TOL};
pub use refine::{refine_memory, PrescientMachine, RefinementKernel, SubState, PRESCIENCE_HORIZON, PRESCIENCE_TOL};
pub use strategy::{
    CausalMemory, KernelFileStrategy, MemoryRegistry, MemoryStrategy, PhaseSplit, PredecessorSplit, StochasticSplit,
};
