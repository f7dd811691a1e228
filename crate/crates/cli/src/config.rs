use std::fmt;
use std::str::FromStr;

use dasym_core::numerics::PrecisionContext;
use dasym_core::{Rational, DEFAULT_TERM_CAP};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected text or json)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        })
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub threshold: Rational,
    pub term_cap: usize,
    pub bits: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threshold: Rational::new(1, 5),
            term_cap: DEFAULT_TERM_CAP,
            bits: dasym_core::numerics::DEFAULT_BITS,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn new(threshold: Rational, term_cap: usize, bits: usize, format: OutputFormat) -> CliResult<Self> {
        if !(threshold.is_positive() && threshold < Rational::one()) {
            return Err(CliError::Usage(format!("threshold {threshold} must lie in (0, 1)")));
        }
        if bits < 64 {
            return Err(CliError::Usage(format!("--bits {bits} is below the 64-bit minimum")));
        }
        if term_cap == 0 {
            return Err(CliError::Usage("--term-cap must be positive".into()));
        }
        Ok(RunConfig { threshold, term_cap, bits, format })
    }

    pub fn precision(&self) -> PrecisionContext {
        PrecisionContext::new(self.bits).expect("bits validated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.threshold, Rational::new(1, 5));
        assert_eq!((c.term_cap, c.bits, c.format), (512, 256, OutputFormat::Text));
    }

    #[test]
    fn invariants() {
        let ok = |t: Rational, b| RunConfig::new(t, 512, b, OutputFormat::Json);
        assert!(ok(Rational::new(1, 2), 64).is_ok());
        for bad in [Rational::zero(), Rational::one(), Rational::new(3, 2), Rational::new(-1, 5)] {
            assert_eq!(ok(bad, 256).unwrap_err().exit_code(), 2);
        }
        assert_eq!(ok(Rational::new(1, 5), 63).unwrap_err().name(), "Usage");
    }

    #[test]
    fn format_parse() {
        assert_eq!("json".parse::<OutputFormat>(), Ok(OutputFormat::Json));
        assert!("latex".parse::<OutputFormat>().is_err());
    }
}
