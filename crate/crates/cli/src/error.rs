use std::fmt;
use std::path::Path;

use liquidrank::{EvalError, GraphError, IngestError, RankError};

/// A failure carrying its process exit code: 1 for I/O, 2 for invalid
/// input or configuration, 3 for domain failures such as an empty graph.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Invalid(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }

    pub fn ingest(path: &Path, err: IngestError) -> Self {
        match err {
            IngestError::Format { line, reason } => {
                CliError::Invalid(format!("{}:{line}: {reason}", path.display()))
            }
            IngestError::Io(e) => CliError::io(path, e),
        }
    }

    pub fn graph(path: &Path, err: GraphError) -> Self {
        match err {
            GraphError::Io(e) => CliError::io(path, e),
            GraphError::Format { line, reason } => {
                CliError::Invalid(format!("{}:{line}: {reason}", path.display()))
            }
            other => CliError::Invalid(format!("{}: {other}", path.display())),
        }
    }

    pub fn rank(err: RankError) -> Self {
        match err {
            RankError::EmptyGraph
            | RankError::DegenerateUpdate { .. }
            | RankError::NodeSetMismatch { .. } => CliError::Domain(err.to_string()),
            RankError::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }

    pub fn ranking_file(path: &Path, err: RankError) -> Self {
        match err {
            RankError::Io(e) => CliError::io(path, e),
            RankError::Format { line, reason } => {
                CliError::Invalid(format!("{}:{line}: {reason}", path.display()))
            }
            other => CliError::rank(other),
        }
    }

    pub fn eval(path: Option<&Path>, err: EvalError) -> Self {
        let at = path
            .map(|p| format!("{}: ", p.display()))
            .unwrap_or_default();
        match err {
            EvalError::Io(e) => CliError::Io(format!("{at}{e}")),
            EvalError::Format { line, reason } => CliError::Invalid(match path {
                Some(p) => format!("{}:{line}: {reason}", p.display()),
                None => format!("line {line}: {reason}"),
            }),
            EvalError::EmptyRanking | EvalError::EmptyInput => {
                CliError::Domain(format!("{at}{err}"))
            }
            other => CliError::Invalid(format!("{at}{other}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) | CliError::Invalid(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}
