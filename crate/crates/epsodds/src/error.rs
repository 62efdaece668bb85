use std::path::PathBuf;

use serde::Serialize;

/// Errors surfaced by the CLI and the HTTP API. Each maps to a stable exit
/// code and HTTP status.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Invalid(epsodds_core::Error),
    #[error("{message} (at {path}, line {line}, column {column})")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: {source}")]
    ScenarioFile {
        file: PathBuf,
        #[source]
        source: Box<AppError>,
    },
    #[error("unknown scenario id {0:?}")]
    UnknownScenario(String),
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<epsodds_core::Error> for AppError {
    fn from(e: epsodds_core::Error) -> Self {
        AppError::Invalid(e)
    }
}

impl AppError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        AppError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn is_extreme_prior(&self) -> bool {
        matches!(self, AppError::Invalid(e) if e.is_extreme_prior())
    }

    /// 1 parse/validation, 2 ExtremePrior, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            _ if self.is_extreme_prior() => 2,
            AppError::Io { .. } => 3,
            AppError::ScenarioFile { source, .. } => source.exit_code(),
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            _ if self.is_extreme_prior() => "extreme_prior",
            AppError::Invalid(_) | AppError::Usage(_) => "validation",
            AppError::Parse { .. } => "parse",
            AppError::ScenarioFile { source, .. } => source.kind(),
            AppError::UnknownScenario(_) => "not_found",
            AppError::Io { .. } => "io",
        }
    }

    pub fn invariant(&self) -> Option<&'static str> {
        match self {
            AppError::Invalid(e) => Some(e.invariant()),
            AppError::ScenarioFile { source, .. } => source.invariant(),
            _ => None,
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            error: self.kind(),
            invariant: self.invariant(),
            message: self.to_string(),
        }
    }
}

/// Machine-readable error: one JSON line on stderr, or the HTTP body.
#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub error: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<&'static str>,
    pub message: String,
}
