use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported format version `{found}` (expected {expected})")]
    Version { found: String, expected: String },

    #[error("outside the formula's domain: {0}")]
    Domain(String),

    /// A search or enumeration guard was hit. `guard` names the limit.
    #[error("resource guard `{guard}` exceeded: {detail}")]
    Resource { guard: &'static str, detail: String },

    #[error("source and sink are already disconnected")]
    Disconnected,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
