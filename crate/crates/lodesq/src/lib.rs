//! File formats, parallel evaluation, and run summaries around
//! [`lodesq_core`]: CSV point-set I/O, descent trace and lattice report
//! writers, the `LODESQ_THREADS` evaluator, and the JSON summary types the
//! `lodesq` binary prints.

pub mod csvio;
pub mod parallel;
pub mod summary;

use std::path::PathBuf;
use thiserror::Error;

/// Errors from the I/O and CLI layer, wrapping the numerical core's.
#[derive(Debug, Error)]
pub enum LodesqError {
    #[error(transparent)]
    Core(#[from] lodesq_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, LodesqError>;
