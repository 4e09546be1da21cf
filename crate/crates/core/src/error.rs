use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of a scalar function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Chebyshev parameters: need 1 > lambda_M > lambda_m > -1, got lambda_m={lambda_m}, lambda_M={lambda_max}")]
    InvalidParams { lambda_m: f64, lambda_max: f64 },

    #[error("random graph generation failed: no connected draw after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigenvalue iteration did not converge")]
    EigenNonConvergence,

    /// Second-largest and smallest eigenvalues coincide, so no interval can be formed.
    #[error("degenerate spectrum: lambda_2={lambda_2}, lambda_N={lambda_n}")]
    DegenerateSpectrum { lambda_2: f64, lambda_n: f64 },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
