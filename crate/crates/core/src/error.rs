use thiserror::Error;

/// Every failure the library reports. Variant names are part of the CLI
/// contract: they are printed verbatim when a command fails.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("EmptySeries: the coefficient stream yields no terms")]
    EmptySeries,
    #[error("ThresholdTooHigh: threshold {threshold} must be below the leading base {leading}")]
    ThresholdTooHigh { threshold: String, leading: String },
    #[error("InvalidThreshold: threshold {0} must be positive")]
    InvalidThreshold(String),
    #[error("TermCapExceeded: more than {cap} terms required")]
    TermCapExceeded { cap: usize },
    #[error("DivergentComposition: inner expansion has base {0} >= 1")]
    DivergentComposition(String),
    #[error("DepthCapTooSmall: depth cap {cap} below the provable maximum {required}")]
    DepthCapTooSmall { cap: usize, required: usize },
    #[error("InsufficientSeriesData: stream only known through base {known}, need {needed}")]
    InsufficientSeriesData { known: String, needed: String },
    #[error("InvalidSeries: {0}")]
    InvalidSeries(String),
    #[error("UnsupportedParameter: {0}")]
    UnsupportedParameter(String),
    #[error("UnknownCharacter: {0}")]
    UnknownCharacter(String),
    #[error("UnknownSeries: {0}")]
    UnknownSeries(String),
    #[error("NotReduced: {p}/{q} is not in lowest terms")]
    NotReduced { p: u64, q: u64 },
    #[error("PoleAt1: zeta has a pole at s = 1")]
    PoleAt1,
    #[error("Unsupported: {0}")]
    Unsupported(String),
    #[error("OutOfDomain: {0}")]
    OutOfDomain(String),
    #[error("PoleAtNonPositiveInteger: {0}")]
    PoleAtNonPositiveInteger(String),
    #[error("PrecisionInsufficient: error bound {bound:e} exceeds expected deviation {expected:e}")]
    PrecisionInsufficient { bound: f64, expected: f64 },
    #[error("UnknownProbe: {0}")]
    UnknownProbe(String),
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// The bare variant name, e.g. `TermCapExceeded`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptySeries => "EmptySeries",
            Error::ThresholdTooHigh { .. } => "ThresholdTooHigh",
            Error::InvalidThreshold(_) => "InvalidThreshold",
            Error::TermCapExceeded { .. } => "TermCapExceeded",
            Error::DivergentComposition(_) => "DivergentComposition",
            Error::DepthCapTooSmall { .. } => "DepthCapTooSmall",
            Error::InsufficientSeriesData { .. } => "InsufficientSeriesData",
            Error::InvalidSeries(_) => "InvalidSeries",
            Error::UnsupportedParameter(_) => "UnsupportedParameter",
            Error::UnknownCharacter(_) => "UnknownCharacter",
            Error::UnknownSeries(_) => "UnknownSeries",
            Error::NotReduced { .. } => "NotReduced",
            Error::PoleAt1 => "PoleAt1",
            Error::Unsupported(_) => "Unsupported",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::PoleAtNonPositiveInteger(_) => "PoleAtNonPositiveInteger",
            Error::PrecisionInsufficient { .. } => "PrecisionInsufficient",
            Error::UnknownProbe(_) => "UnknownProbe",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
