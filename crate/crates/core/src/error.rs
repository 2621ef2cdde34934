use thiserror::Error;

/// Errors raised by the simulation, enumeration and spectral routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid gate {gate}: {reason}")]
    InvalidGate { gate: String, reason: String },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource cap exceeded: {requested} spins requested, cap is {cap}")]
    ResourceCap { requested: usize, cap: usize },

    #[error("probabilities are not normalized (sum = {0})")]
    Unnormalized(f64),

    #[error("a seed is required when shots > 0")]
    MissingSeed,

    #[error("observable does not anticommute with term {term}")]
    NotAnticommuting { term: String },

    #[error("characteristic series has a non-vanishing imaginary part {0:e}; spectrum is not symmetric")]
    AsymmetricSpectrum(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
