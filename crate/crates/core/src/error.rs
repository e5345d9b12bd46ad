use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("machine has no states")]
    NoStates,
    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("unknown {kind} `{label}`")]
    UnknownLabel { kind: &'static str, label: String },
    #[error("transition from state `{state}` has probability {p} outside [0, 1]")]
    InvalidProbability { state: String, p: f64 },
    #[error("outgoing probabilities of state `{state}` sum to {sum}, expected 1")]
    RowSum { state: String, sum: f64 },
    #[error("machine has {classes} recurrent classes, exactly one is required")]
    Disconnected { classes: usize },
    #[error("machine declared unifilar={declared} but the transitions make it unifilar={actual}")]
    UnifilarMismatch { declared: bool, actual: bool },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("stationary distribution solve is numerically degenerate")]
    SingularSolve,
    #[error("block of {k} symbols over an alphabet of {alphabet} exceeds the budget of {max_words} words")]
    BlockTooLarge { k: usize, alphabet: usize, max_words: usize },
    #[error("axis `{0}` is not present in the joint table")]
    Axis(String),
    #[error("operation requires a unifilar presentation")]
    UnifilarRequired,
    #[error("invalid refinement kernel: {0}")]
    Kernel(String),
    #[error(
        "memory is not prescient: state `{state}` deviates by {deviation:e} in total variation at horizon {horizon}"
    )]
    PrescienceViolation { state: String, deviation: f64, horizon: usize },
    #[error("unknown memory strategy `{0}`")]
    UnknownStrategy(String),
    #[error("generator and extractor desynchronized at block {block}: causal states `{generator}` vs `{extractor}`")]
    Desynchronized { block: usize, generator: String, extractor: String },
    #[error("need at least {needed} symbols, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("identity check failed: {0}")]
    Identity(String),
    #[error("invalid units: {0}")]
    Units(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed CSV record: {0}")]
    Record(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input files.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::EmptyAlphabet
                | Error::NoStates
                | Error::DuplicateLabel { .. }
                | Error::UnknownLabel { .. }
                | Error::InvalidProbability { .. }
                | Error::RowSum { .. }
                | Error::Disconnected { .. }
                | Error::UnifilarMismatch { .. }
                | Error::InvalidDistribution(_)
                | Error::SingularSolve
                | Error::Kernel(_)
                | Error::UnknownStrategy(_)
                | Error::Units(_)
                | Error::Config(_)
                | Error::Json(_)
        )
    }
}
