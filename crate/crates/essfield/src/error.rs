use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide error type with stable error codes for the CLI surface.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Root finding failed to converge; the partial approximations are kept
    /// so callers can report how far the iteration got.
    #[error("numeric failure: {message}")]
    RootFinding {
        message: String,
        partial: Vec<Complex64>,
    },

    #[error("numeric failure: {0}")]
    Quadrature(String),

    #[error("evaluation at {point} hits a pole")]
    PoleEvaluation { point: Complex64 },

    #[error("exponential out of range at {point}: Re E = {exponent}")]
    Range { point: Complex64, exponent: f64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field fails validation: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("gauge unavailable: {0}")]
    UnsupportedGauge(String),

    #[error("symmetry spec rejected: {0}")]
    SpecRejection(String),

    #[error("divisor is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("invalid germ: {0}")]
    InvalidGerm(String),

    #[error("path rejected: {0}")]
    PathRejection(String),

    #[error("seed rejected: {0}")]
    SeedRejection(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, one per failure class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::RootFinding { .. } => "numeric-failure",
            Error::Quadrature(_) => "numeric-failure",
            Error::PoleEvaluation { .. } => "pole-evaluation",
            Error::Range { .. } => "range",
            Error::InvalidField(_) => "invalid-field",
            Error::Validation(_) => "validation",
            Error::UnsupportedGauge(_) => "unsupported-gauge",
            Error::SpecRejection(_) => "spec-rejection",
            Error::NotSymmetric(_) => "not-symmetric",
            Error::InvalidGerm(_) => "invalid-germ",
            Error::PathRejection(_) => "path-rejection",
            Error::SeedRejection(_) => "seed-rejection",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
