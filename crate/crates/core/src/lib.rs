//! Thermodynamic costs of generating and extracting structured patterns.
//!
//! A stationary process is given as a finite edge-emitting machine. From it the crate derives
//! the causal states, any prescient memory that refines them, and the work a finite-block
//! generator or extractor must spend or may recover with that memory. A seeded simulation of
//! the generate-then-extract cycle cross-checks the analytic numbers.
//!
//! ```
//! use patterncost::{fixtures, minimize_to_causal, BlockBudget, MemoryRegistry, Units, dissipation_cost};
//!
//! let causal = minimize_to_causal(&fixtures::perturbed_coin(0.9)).unwrap();
//! let budget = BlockBudget::default();
//! let memory = MemoryRegistry::with_builtins().build("causal", &causal, &budget).unwrap();
//! let d = dissipation_cost(&memory, 2, Units::Bits, &budget).unwrap();
//! assert!((d.predict_retrodict - 0.468996).abs() < 1e-6);
//! ```

pub mod causal;
pub mod error;
pub mod fixtures;
pub mod info;
pub mod process;
pub mod sim;
pub mod thermo;

pub use causal::{
    minimize_to_causal, CausalMachine, MemoryRegistry, MemoryStrategy, PrescientMachine, RefinementKernel,
};
pub use error::{Error, Result};
pub use info::{excess_entropy, ExcessEntropy};
pub use process::{validate_machine, BlockBudget, MachineSpec, ValidatedMachine};
pub use sim::{run_cycle, SimConfig};
pub use thermo::{cycle_report, dissipation_cost, CostReport, Units};
