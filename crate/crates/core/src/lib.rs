//! Dual-track evaluator for the scaled Norlund polynomials B_n^(n)(nz):
//! an exact big-rational reference track and a steepest-descent asymptotic
//! track with arbitrary-order coefficient generation, regime dispatch, and
//! detection of the exponentially small expansion across Re z = 1.

pub mod asymp;
pub mod cpx;
pub mod descent;
pub mod error;
pub mod prec;
pub mod pseries;
pub mod ratcore;
pub mod saddle;
pub mod tables;

pub use asymp::{AsymptoticResult, Regime, StokesProbe, TruncationChoice};
pub use cpx::BigComplex;
pub use error::{Error, Result};
pub use prec::PrecisionConfig;
pub use pseries::ComplexSeries;
pub use ratcore::{ComplexRational, RationalPolynomial, RationalSeries};
pub use saddle::{CoefficientSet, SaddleContext};
