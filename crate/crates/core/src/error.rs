use thiserror::Error;

use crate::fuzzy::Diagnostic;

/// Errors raised by the fuzzy engine, the knowledge-base loader and the neural baseline.
#[derive(Debug, Error)]
pub enum FlowError {
    #[error("system failed validation: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown term `{term}` for variable `{variable}`")]
    UnknownTerm { variable: String, term: String },

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("input for `{variable}` is not a finite number")]
    NonFiniteInput { variable: String },

    #[error("centroid of an empty fuzzy set is undefined")]
    EmptySet,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("data error at line {line}: {message}")]
    Data { line: u64, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("split error: {0}")]
    Split(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = FlowError> = std::result::Result<T, E>;
