//! Arbitrary-precision real evaluation of the special functions behind the
//! expansions and limit probes.
//!
//! Every evaluator returns a [`BigReal`] whose `err` field bounds the
//! absolute error, covering both truncation of the underlying series and
//! rounding at the working precision.

mod constants;
mod gamma;
mod probes;
mod real;
mod validate;
mod zeta;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use constants::{bernoulli_numbers, euler_gamma, harmonic_table, HarmonicTable};
pub use gamma::{gamma_real, lngamma_pole_series, lngamma_real, LnGamma, PoleCoefficient, PoleSeries};
pub use probes::{limit_probe, ProbeId, ProbeResult, PROBE_NAMES};
pub use real::{format_decimal, BigReal};
pub use validate::{evaluate_series, validate_expansion, Validation};
pub use zeta::{
    beta_real, dirichlet_lambda_real, eta_real, hurwitz_zeta_real, l_char_real, prime_zeta_real,
    thue_morse_series_real, zeta_real, ThueMorseVariant,
};

/// Working precision for one computation.
///
/// `bits` is the target mantissa precision. Results carry an error bound of
/// at most 2^(−bits+guard_bits) relative to their magnitude unless an
/// evaluator documents otherwise; internally all work is done with extra
/// bits on top of `bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub bits: usize,
    pub guard_bits: usize,
}

pub const DEFAULT_BITS: usize = 256;
const INTERNAL_EXTRA_BITS: usize = 32;

impl PrecisionContext {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < 64 {
            return Err(Error::UnsupportedParameter(format!("precision {bits} bits is below the 64-bit minimum")));
        }
        Ok(PrecisionContext { bits, guard_bits: 8 })
    }

    pub fn with_guard_bits(mut self, guard_bits: usize) -> Self {
        self.guard_bits = guard_bits;
        self
    }

    /// The same context with `extra` more bits.
    pub fn raised(self, extra: usize) -> Self {
        PrecisionContext { bits: self.bits + extra, ..self }
    }

    pub(crate) fn wp(&self) -> usize {
        self.bits + INTERNAL_EXTRA_BITS
    }

    /// Relative error allowed by the invariant.
    pub fn tolerance(&self) -> f64 {
        2f64.powi(self.guard_bits as i32 - self.bits as i32)
    }

    /// Decimal digits carried by `bits`.
    pub fn decimal_digits(&self) -> usize {
        (self.bits as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { bits: DEFAULT_BITS, guard_bits: 8 }
    }
}
