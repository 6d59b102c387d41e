//! Error type shared by every module in the crate.

use std::path::PathBuf;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix shapes incompatible for an operation; names both shapes.
    #[error("{op}: dimension mismatch, left is {lhs_rows}x{lhs_cols}, right is {rhs_rows}x{rhs_cols}")]
    Dimension {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    /// Mask carries weight on an edge the graph does not have.
    #[error("mask support violation: weight on absent edge ({0}, {1})")]
    MaskSupport(usize, usize),

    /// An edge list referenced an edge outside the source graph.
    #[error("edge ({0}, {1}) is not an edge of the source graph")]
    ForeignEdge(usize, usize),

    /// Caller violated an API precondition.
    #[error("{0}")]
    Usage(String),

    /// A text input could not be parsed.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    /// Run configuration is invalid.
    #[error("config error{}: {msg}", fmt_line(*.line))]
    Config { line: Option<usize>, msg: String },

    /// A command was run before the artifacts it needs exist.
    #[error("missing prerequisite: {what}; run `acx {run_first}` first")]
    MissingPrerequisite { what: String, run_first: String },

    /// Training or evaluation produced a non-finite value.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A persisted artifact is corrupt or truncated.
    #[error("format error in {path}: {msg}")]
    Format { path: PathBuf, msg: String },

    /// A persisted artifact has an unsupported version tag.
    #[error("unsupported version tag {found:?} in {path} (expected {expected:?})")]
    Version {
        path: PathBuf,
        found: String,
        expected: String,
    },

    /// Artifacts in a run directory were produced under a different config snapshot.
    #[error("artifact {path} was produced under config snapshot {found}, current snapshot is {expected}")]
    SnapshotMismatch {
        path: PathBuf,
        found: String,
        expected: String,
    },

    /// Another command holds the run-directory lock.
    #[error("run directory is locked by another command ({0}); remove the lock file if stale")]
    Locked(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_line(line: Option<usize>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}

impl Error {
    /// Process exit code for the CLI: 2 config, 3 missing prerequisite, 4 numerical, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Parse { .. } => 2,
            Error::MissingPrerequisite { .. } => 3,
            Error::Numerical(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
