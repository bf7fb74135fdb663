use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A parse failure with its 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),

    #[error("{locator}:{error}")]
    SyntaxIn { locator: String, error: SyntaxError },

    #[error("unsafe rule {rule}: head variable(s) {} not bound in body", .variables.join(", "))]
    UnsafeRule {
        rule: String,
        variables: Vec<String>,
    },

    #[error("rule {rule}: blank node _:{label} in head")]
    BlankInHead { rule: String, label: String },

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("{0} is undefined for an empty graph")]
    EmptyGraph(&'static str),

    #[error("invalid namespace declaration: {0}")]
    Namespace(String),

    #[error("cannot resolve {locator}: {reason}")]
    Unresolvable { locator: String, reason: String },

    #[error("unsupported: RIF rule source {0}")]
    UnsupportedRif(String),

    #[error("malformed description: {0}")]
    Description(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attaches the name of the input a syntax error came from.
    pub fn in_input(self, locator: &str) -> Error {
        match self {
            Error::Syntax(error) => Error::SyntaxIn {
                locator: locator.to_string(),
                error,
            },
            other => other,
        }
    }
}
