use thiserror::Error;

use crate::minimax::ChebyshevSolution;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the routine is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative root finder gave up.
    #[error("root {index} failed to converge: {reason}")]
    RootNotConverged { index: usize, reason: String },

    /// The Remez iteration hit `max_iter` without levelling the error.
    #[error("remez iteration did not converge after {iterations} iterations (levelling defect {defect:e})")]
    NonConvergence {
        iterations: usize,
        defect: f64,
        best: Box<ChebyshevSolution>,
    },

    /// Two reference points coincided or the leveled system became singular.
    #[error("degenerate reference: {0}")]
    Degenerate(String),

    /// The error curve did not show enough sign alternations.
    #[error("exchange failure: found {found} alternating extrema, need {needed}")]
    ExchangeFailure { found: usize, needed: usize },

    /// A verified property did not hold.
    #[error("property violation: {0}")]
    PropertyViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
