use thiserror::Error;

use crate::assessment::ItemPath;

/// Failure to turn bytes into an [`Assessment`](crate::Assessment).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// The input is not well-formed JSON.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed JSON that does not describe a valid document.
    #[error("{message}{}", .position.map(|(l, c)| format!(" (line {l}, column {c})")).unwrap_or_default())]
    Semantic {
        message: String,
        position: Option<(usize, usize)>,
    },
}

impl ParseError {
    pub(crate) fn semantic(message: impl Into<String>) -> Self {
        ParseError::Semantic {
            message: message.into(),
            position: None,
        }
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(err: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let (line, column) = (err.line(), err.column());
        // serde_json appends " at line X column Y" to its Display output
        let mut message = err.to_string();
        if let Some(idx) = message.rfind(" at line ") {
            message.truncate(idx);
        }
        match err.classify() {
            Category::Syntax | Category::Eof | Category::Io => ParseError::Syntax {
                line,
                column,
                message,
            },
            Category::Data => ParseError::Semantic {
                message,
                position: Some((line, column)),
            },
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown framework '{0}'")]
    UnknownFramework(String),

    #[error("assessments reference different frameworks ('{0}' vs '{1}')")]
    FrameworkMismatch(String, String),

    #[error("no item '{0}' in assessment")]
    UnknownPath(ItemPath),

    #[error("evidence id '{0}' already exists in the ledger")]
    DuplicateEvidenceId(String),

    #[error("insufficient data: no section has a known score")]
    InsufficientData,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("search log row {row}: {message}")]
    SearchLog { row: usize, message: String },

    #[error("invalid ruleset: {0}")]
    InvalidRuleset(String),

    #[error("invalid output format '{0}'")]
    InvalidFormat(String),

    #[error("invalid override '{0}': {1}")]
    InvalidOverride(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
