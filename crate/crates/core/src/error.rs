use thiserror::Error;

/// Errors produced anywhere in the design and validation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed document; `location` names the line or field.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A structural invariant was violated.
    #[error("invalid {object}: {invariant}")]
    Validation {
        object: &'static str,
        invariant: String,
    },

    /// Argument outside the domain of a numerical function.
    #[error("domain error in {function}: {message}")]
    Domain {
        function: &'static str,
        message: String,
    },

    #[error("lifting error: {0}")]
    Lifting(String),

    /// Girth repair gave up with 4-cycles still present.
    #[error("4-cycle removal incomplete after {passes} passes: {residual} 4-cycles remain")]
    GirthRepair { passes: usize, residual: usize },

    /// PEXIT never converged inside the widened search bracket.
    #[error("ensemble undecodable: no convergence up to {max_db} dB Eb/N0")]
    Undecodable { max_db: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    /// Enumeration refused because the space is too large.
    #[error("search space has {size} assignments, above the limit of {limit}")]
    SpaceTooLarge { size: String, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(object: &'static str, invariant: impl Into<String>) -> Self {
        Error::Validation {
            object,
            invariant: invariant.into(),
        }
    }

    pub(crate) fn domain(function: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            function,
            message: message.into(),
        }
    }
}
