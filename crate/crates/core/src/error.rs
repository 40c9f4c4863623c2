use thiserror::Error;

/// Errors raised by the measure, fitting and estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("degenerate sample: all values are equal")]
    DegenerateSample,

    #[error("sample needs at least {need} observations, got {got}")]
    TooFewObservations { need: usize, got: usize },

    #[error("sample contains a non-finite value at index {0}")]
    NonFiniteSample(usize),

    #[error("supports differ: {0}")]
    SupportMismatch(String),

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("generating function could not be evaluated at t = {t}")]
    StepDegeneracy { t: f64 },

    #[error("delta = {0} is excluded for this series order")]
    DeltaExcluded(f64),

    #[error("finite-difference derivative of order {order} is unstable at x = {x}")]
    DerivativeInstability { order: usize, x: f64 },

    #[error("cumulative probability hits the boundary at x = {0}")]
    BoundaryProbability(f64),

    #[error("every grid point was excluded from the log-ratio integrand")]
    AllMassExcluded,
}

impl Error {
    /// Short machine-readable category, used for CLI exit reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_) => "invalid-parameters",
            Error::Domain(_) => "domain-error",
            Error::NonFiniteIntegrand { .. } => "non-finite-integrand",
            Error::NoConvergence { .. } => "no-convergence",
            Error::DegenerateSample => "degenerate-sample",
            Error::TooFewObservations { .. } => "too-few-observations",
            Error::NonFiniteSample(_) => "non-finite-sample",
            Error::SupportMismatch(_) => "support-mismatch",
            Error::SupportViolation(_) => "support-violation",
            Error::LengthMismatch(..) => "length-mismatch",
            Error::StepDegeneracy { .. } => "step-degeneracy",
            Error::DeltaExcluded(_) => "delta-excluded",
            Error::DerivativeInstability { .. } => "derivative-instability",
            Error::BoundaryProbability(_) => "boundary-probability",
            Error::AllMassExcluded => "all-mass-excluded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
