//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument z = {0} is a pole of the saddle equation (z in {{0, 1}})")]
    PoleArgument(String),

    #[error("series division requires a nonzero constant term (|b0| = {0:e})")]
    ZeroConstantTerm(f64),

    #[error("series composition requires a zero constant term (|x0| = {0:e})")]
    NonzeroConstantTerm(f64),

    #[error("series reversion requires a nonzero linear term (|w1| = {0:e})")]
    ZeroLinearTerm(f64),

    #[error("square-root branch ambiguous: both roots equidistant from target")]
    AmbiguousBranch,

    #[error("residual {what} term {mag:e} exceeds the precision tolerance {tol:e}")]
    PrecisionFailure { what: &'static str, mag: f64, tol: f64 },

    #[error("input outside the regime of validity: {0}")]
    RegimeViolation(String),

    #[error("z is inside the exclusion band around [0,1] (distance {dist:e} < eps {eps:e})")]
    ExclusionBand { dist: f64, eps: f64 },

    #[error("saddle is degenerate: |psi''| = {0:e}")]
    DegenerateSaddle(f64),

    #[error("path corrector diverged after {0} consecutive failed steps")]
    CorrectionDiverged(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
