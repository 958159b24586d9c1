use thiserror::Error;

/// Errors raised when constructing or combining the library's value types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Pauli index must be 1, 2 or 3, got {0}")]
    InvalidPauliIndex(usize),

    #[error("vector is not on the unit sphere: |‖u‖ − 1| = {deviation:e}")]
    NotUnitVector { deviation: f64 },

    #[error("state is not normalized: |‖ψ‖² − 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("matrix is not Hermitian: max |M − M†| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("non-finite component in {0}")]
    NonFinite(&'static str),

    #[error("{name} = {value} lies outside the open interval ({lo}, {hi}) required of a transition probability")]
    ProbabilityOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("{name} = {value} lies outside the open interval (0, π)")]
    AngleOutOfRange { name: &'static str, value: f64 },

    #[error("transition matrix {name} is not a symmetric doubly stochastic 2×2 matrix (residual {residual:e})")]
    BadTransitionMatrix { name: &'static str, residual: f64 },

    #[error("observable {name:?} has coincident values ({x1}, {x2})")]
    DegenerateValues { name: String, x1: f64, x2: f64 },

    #[error(
        "no three unit vectors realise the requested angles (1 − Σcos² + 2Πcos = {invariant:e})"
    )]
    InfeasibleGram { invariant: f64 },

    #[error("commutator evidence is mixed: {nonzero} of 6 averages are nonzero")]
    MixedEvidence { nonzero: usize },

    #[error("model is not strictly complex (invariant K = {k:e})")]
    NotStrictlyComplex { k: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
