use emergent_space::Error as CoreError;
use serde_json::Value;
use thiserror::Error;

use crate::json::object;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}: line {line}, column {column}: {reason}")]
    Syntax { origin: String, line: usize, column: usize, reason: String },
    #[error("{origin}: at `{path}`: expected {expected}, got {got}")]
    Schema { origin: String, path: String, expected: String, got: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("output of scenario `{name}` differs from its golden file\n{diff}")]
    GoldenMismatch { name: String, diff: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_GOLDEN: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::GoldenMismatch { .. } => EXIT_GOLDEN,
            CliError::Core(e) if is_domain(e) => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        }
    }

    /// Stable identifier for the diagnostic object on stderr.
    pub fn kind(&self) -> String {
        match self {
            CliError::Syntax { .. } => "SyntaxError".into(),
            CliError::Schema { .. } => "SchemaError".into(),
            CliError::Io(_) => "IoError".into(),
            CliError::Usage(_) => "UsageError".into(),
            CliError::UnknownScenario(_) => "UnknownScenario".into(),
            CliError::GoldenMismatch { .. } => "GoldenMismatch".into(),
            CliError::Core(e) => core_kind(e).into(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut pairs = vec![("error", Value::String(self.kind())), ("message", Value::String(self.to_string()))];
        match self {
            CliError::Schema { path, .. } => pairs.push(("path", Value::String(path.clone()))),
            CliError::Syntax { line, column, .. } => {
                pairs.push(("line", Value::from(*line)));
                pairs.push(("column", Value::from(*column)));
            }
            CliError::Core(CoreError::ContextIncompatible(i, j, norm)) => {
                pairs.push(("pair", Value::from(vec![*i, *j])));
                pairs.push(("commutator_norm", crate::json::real(*norm)));
            }
            CliError::Core(CoreError::NotSelfAdjoint { asymmetry, .. }) => {
                pairs.push(("max_asymmetry", crate::json::real(*asymmetry)));
            }
            _ => {}
        }
        object(pairs)
    }
}

/// Errors that are a property of valid input rather than a malformed one.
fn is_domain(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::NotInvertible
            | CoreError::StateSpaceTooLarge(..)
            | CoreError::NotProbabilistic(_)
            | CoreError::ContextIncompatible(..)
            | CoreError::DiagonalizationFailed(_)
            | CoreError::HorizonTooShort { .. }
    )
}

fn core_kind(e: &CoreError) -> &'static str {
    match e {
        CoreError::DuplicateLabel(_) => "DuplicateLabel",
        CoreError::MissingTransition(_) => "MissingTransition",
        CoreError::UnknownTarget { .. } => "UnknownTarget",
        CoreError::NotInvertible => "NotInvertible",
        CoreError::UnsupportedTimeModel(_) => "UnsupportedTimeModel",
        CoreError::TooManyStates(..) => "TooManyStates",
        CoreError::UnknownLabel(_) => "UnknownLabel",
        CoreError::NegativeTimeInMonoid(_) => "NegativeTimeInMonoid",
        CoreError::InvalidSubset(_) => "InvalidSubset",
        CoreError::StateSpaceTooLarge(..) => "StateSpaceTooLarge",
        CoreError::PartialProperty(_) => "PartialProperty",
        CoreError::PartialFunction => "PartialFunction",
        CoreError::NotProbabilistic(_) => "NotProbabilistic",
        CoreError::WeightCount { .. } => "WeightCount",
        CoreError::DimMismatch(..) => "DimMismatch",
        CoreError::NotSquare(..) => "NotSquare",
        CoreError::NotAState(_) => "NotAState",
        CoreError::NonClosedAlgebra(_) => "NonClosedAlgebra",
        CoreError::NotSelfAdjoint { .. } => "NotSelfAdjoint",
        CoreError::ContextIncompatible(..) => "ContextIncompatible",
        CoreError::DiagonalizationFailed(_) => "DiagonalizationFailed",
        CoreError::EmptyContext => "EmptyContext",
        CoreError::BadAxis(_) => "BadAxis",
        CoreError::ZeroField => "ZeroField",
        CoreError::HorizonTooShort { .. } => "HorizonTooShort",
        CoreError::InvalidArgument(_) => "InvalidArgument",
    }
}
