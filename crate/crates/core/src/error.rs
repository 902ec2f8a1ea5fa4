use thiserror::Error;

/// Errors raised by the core constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate state label `{0}`")]
    DuplicateLabel(String),
    #[error("no transition defined for state `{0}`")]
    MissingTransition(String),
    #[error("transition target `{target}` of `{source_label}` is not a state")]
    UnknownTarget { source_label: String, target: String },
    #[error("group time requires a bijective step map")]
    NotInvertible,
    #[error("unsupported time model `{0}` (only monoid and group steps are supported)")]
    UnsupportedTimeModel(String),
    #[error("system has {0} states; at most {1} are supported")]
    TooManyStates(usize, usize),
    #[error("unknown state label `{0}`")]
    UnknownLabel(String),
    #[error("negative time {0} requires group time")]
    NegativeTimeInMonoid(i64),
    #[error("subset references states outside a universe of {0}")]
    InvalidSubset(usize),
    #[error("state space of {0} states exceeds the exhaustive enumeration cap of {1}")]
    StateSpaceTooLarge(usize, usize),

    #[error("property `{0}` is not defined on every element")]
    PartialProperty(String),
    #[error("function is not defined on every element")]
    PartialFunction,
    #[error("measure is not a probability measure: {0}")]
    NotProbabilistic(String),
    #[error("expected {expected} atom weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimMismatch(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("span is not a *-algebra: residual {0:.3e}")]
    NonClosedAlgebra(f64),
    #[error("observable `{name}` is not self-adjoint (max asymmetry {asymmetry:.3e})")]
    NotSelfAdjoint { name: String, asymmetry: f64 },
    #[error("observables {0} and {1} do not commute (|[a,b]|_max = {2:.3e})")]
    ContextIncompatible(usize, usize, f64),
    #[error("simultaneous diagonalization failed after {0} attempts")]
    DiagonalizationFailed(usize),
    #[error("empty observable list")]
    EmptyContext,

    #[error("spin axis must be 1, 2 or 3, got {0}")]
    BadAxis(usize),
    #[error("field strength must be positive and finite")]
    ZeroField,
    #[error("horizon {horizon:.6} is shorter than one period {period:.6}")]
    HorizonTooShort { horizon: f64, period: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
