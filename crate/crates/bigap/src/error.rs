//! Error taxonomy for the laboratory.
//!
//! Every fallible operation returns [`Result`]. The variants map onto the
//! CLI's stable exit-code contract: domain/usage/parse problems exit 2,
//! I/O problems exit 1, and numerical failures (a solver that cannot meet
//! its residual contract) exit 3. Numerical failures always carry the best
//! residual achieved so a caller can decide whether to retry with a looser
//! tolerance — silent degradation is never an option.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on a mathematical argument was violated
    /// (probability out of range, dimension mismatch, index out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A vertex with degree zero was encountered where the normalized
    /// operator (or a degree-scaled quantity) requires all degrees >= 1.
    /// `vertex` is the side-local index.
    #[error("{side} vertex {vertex} is isolated (degree 0); normalized quantities are undefined for it")]
    IsolatedVertex {
        /// `"left"` or `"right"`.
        side: &'static str,
        /// Index within its side, counting from 0.
        vertex: usize,
    },

    /// The iterative eigensolver exhausted its iteration budget before every
    /// requested eigenpair met the residual tolerance.
    #[error(
        "eigensolver did not converge within {max_iter} iterations: \
         best residual {best_residual:.3e} > tolerance {tol:.3e}"
    )]
    NonConvergence {
        /// Iteration budget that was exhausted.
        max_iter: usize,
        /// Smallest max-residual over target pairs achieved at any checkpoint.
        best_residual: f64,
        /// The residual the caller asked for.
        tol: f64,
    },

    /// A dense O(n^3) eigendecomposition was requested above the configured cap.
    #[error("dimension {n} exceeds the dense-oracle cap {cap}; use the iterative solver for matrices this large")]
    OracleCap {
        /// Requested dimension.
        n: usize,
        /// Configured cap.
        cap: usize,
    },

    /// A text input (edge-list file or config file) failed to parse.
    /// `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    Parse {
        /// Path of the offending file (or a pseudo-path like `<stdin>`).
        path: String,
        /// 1-based line number.
        line: usize,
        /// What went wrong on that line.
        message: String,
    },

    /// An experiment configuration is internally inconsistent.
    #[error("config error: {0}")]
    Config(String),

    /// Filesystem failure, annotated with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        /// Path involved in the failed operation.
        path: PathBuf,
        /// Underlying OS error.
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Convenience constructor used throughout the crate.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Attach a path to a raw I/O error.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// The CLI exit code this error maps to (1 = I/O, 2 = usage, 3 = numerical).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 1,
            Error::Domain(_)
            | Error::IsolatedVertex { .. }
            | Error::OracleCap { .. }
            | Error::Parse { .. }
            | Error::Config(_) => 2,
            Error::NonConvergence { .. } => 3,
        }
    }
}
