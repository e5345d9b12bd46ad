//! Finite edge-emitting presentations of stationary processes and exact queries on them.

pub mod blocks;
pub mod machine;
pub mod sample;
pub mod stationary;

pub use blocks::{
    future_distributions, joint_block_distribution, word_distribution, word_state_distribution, BlockBudget,
    JointBlockDistribution,
};
pub use machine::{
    validate_machine, Alphabet, DefaultSymbolDistribution, Edge, MachineSpec, TransitionSpec, ValidatedMachine,
};
pub use sample::{sample_path, SamplePath};
pub use stationary::{stationary_distribution, StationaryDistribution};
