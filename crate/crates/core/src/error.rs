use std::path::PathBuf;

use thiserror::Error;

use crate::quadrature::QuadratureKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kind:?} rule needs at least {min} points, got {n}")]
    InvalidPointCount { kind: QuadratureKind, n: usize, min: usize },

    #[error("Newton iteration for a quadrature node did not converge (last iterate {x})")]
    QuadratureNotConverged { x: f64 },

    #[error("volume rule has {points} points but degree {degree} needs at least {required}")]
    InsufficientQuadrature {
        degree: usize,
        points: usize,
        required: usize,
    },

    #[error("singular {0} matrix")]
    SingularMatrix(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element index {index} out of range for a mesh of {n_elements} elements")]
    ElementOutOfRange { index: usize, n_elements: usize },

    #[error("state became non-finite at t = {t}")]
    Diverged { t: f64 },

    #[error("config line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("invalid value `{value}` for `{key}`")]
    InvalidValue { key: String, value: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
