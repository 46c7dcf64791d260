//! Numeric defaults shared by the library and the command line.

use crate::scalar::Scalar;

pub const DEFAULT_DIGITS: u32 = 40;
pub const DEFAULT_WEIGHT: usize = 6;
/// Largest weight for which the Drinfeld associator is built on request.
pub const MAX_KZ_WEIGHT: usize = 8;
/// Largest degree for fully symbolic relation extraction.
pub const MAX_SYMBOLIC_DEGREE: usize = 5;

/// Residual threshold `10^-(p-15)` for complex runs at `p` digits.
pub fn default_threshold(digits: u32) -> f64 {
    10f64.powi(-(digits as i32 - 15))
}

/// Threshold appropriate for values of ring `C`: zero for exact rings.
pub fn threshold_for<C: Scalar>(ctx: &C::Ctx) -> f64 {
    match C::digits(ctx) {
        Some(p) => default_threshold(p),
        None => 0.0,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub digits: u32,
    pub weight: usize,
    /// Explicit residual threshold; `None` means [`default_threshold`].
    pub threshold: Option<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config { digits: DEFAULT_DIGITS, weight: DEFAULT_WEIGHT, threshold: None }
    }
}

impl Config {
    pub fn threshold(&self) -> f64 {
        self.threshold.unwrap_or_else(|| default_threshold(self.digits))
    }
}
