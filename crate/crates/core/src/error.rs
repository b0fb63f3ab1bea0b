use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not strictly positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("quadrature order {0} outside supported range 2..=64")]
    QuadratureOrder(usize),

    #[error("integrand is not finite ({value}) at node {node:?}")]
    NonFiniteIntegrand { node: Vec<f64>, value: f64 },

    #[error("quadrature did not converge: order {order} gave {value:e}, order {check_order} gave {check_value:e} (relative change {rel_change:e})")]
    NonConvergence {
        order: usize,
        check_order: usize,
        value: f64,
        check_value: f64,
        rel_change: f64,
    },

    #[error("grid has {required} points, limit is {allowed}")]
    GridGuard { required: u64, allowed: u64 },

    #[error("config error at {field}: {message}")]
    Config { field: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line tool.
    ///
    /// 0 ok, 2 config, 3 guard, 4 I/O, 5 verification failure. Numerical
    /// domain errors raised while loading a config count as config errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. }
            | Error::Domain(_)
            | Error::DimensionMismatch { .. }
            | Error::NotPositiveDefinite(_)
            | Error::QuadratureOrder(_) => 2,
            Error::GridGuard { .. } => 3,
            Error::Io { .. } => 4,
            Error::NonFiniteIntegrand { .. } | Error::NonConvergence { .. } | Error::Verification(_) => 5,
        }
    }
}
