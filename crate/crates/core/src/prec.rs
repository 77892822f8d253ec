//! Working-precision configuration shared by the series engine and the
//! asymptotic evaluator.

pub const DEFAULT_DIGITS: u32 = 60;
pub const MIN_DIGITS: u32 = 30;
pub const DEFAULT_EXCLUSION_EPS: f64 = 0.05;
pub const DEFAULT_STOKES_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionConfig {
    /// Working precision in decimal digits.
    pub digits: u32,
    /// Refusal distance from the segment [0,1] for the asymptotic track.
    pub exclusion_eps: f64,
    /// Relative half-width of the band around Re z = 1 treated as the
    /// discontinuity line of the two-expansion split.
    pub stokes_eps: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            digits: DEFAULT_DIGITS,
            exclusion_eps: DEFAULT_EXCLUSION_EPS,
            stokes_eps: DEFAULT_STOKES_EPS,
        }
    }
}

impl PrecisionConfig {
    pub fn with_digits(digits: u32) -> Self {
        PrecisionConfig { digits: digits.max(MIN_DIGITS), ..Default::default() }
    }

    /// Binary precision handed to the float backend, with guard bits.
    pub fn bits(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    /// Series truncation order used when generating A_0..A_K.
    pub fn series_order(k_max: usize) -> usize {
        2 * k_max + 8
    }
}

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}
