use thiserror::Error;

/// Errors raised by parameter validation and config parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{name}` = {value} is out of range: {reason}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("line {line}: unknown config key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: expected `key=value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: cannot parse value `{value}` for key `{key}`")]
    BadValue { line: usize, key: String, value: String },
    #[error("unknown reaction `{0}` (expected logistic, off or custom:<c1>,<c2>,...)")]
    UnknownReaction(String),
}

/// Errors raised by the dispersion solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispersionError {
    #[error("{what} undefined at {at}: {reason}")]
    Domain {
        what: &'static str,
        at: f64,
        reason: &'static str,
    },
    #[error("operation requires field-to-road rate 1 (got {0}); normalize first")]
    NotNormalized(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("no sign change found while bracketing {what} up to {limit}")]
    BracketFailure { what: &'static str, limit: f64 },
    #[error("strip of width {width} shows no tangency below the half-plane speed {c_star}")]
    NoTangency { width: f64, c_star: f64 },
    #[error("strip speed needs road diffusivity above twice the field diffusivity")]
    SubThresholdStrip,
}

/// Errors raised by the finite-difference simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid grid: {0}")]
    BadGrid(&'static str),
    #[error("CFL safety factor must lie in (0, 1], got {0}")]
    BadSafety(f64),
    #[error("time step {dt} exceeds the stability bound {limit}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("initial datum vanishes on every grid node")]
    EmptyDatum,
    #[error("initial datum must be nonnegative and finite")]
    NegativeDatum,
    #[error("solution blew up at step {step} (t = {t}): |value| {value} exceeds {bound}")]
    BlowUp {
        step: usize,
        t: f64,
        value: f64,
        bound: f64,
    },
    #[error("end time must be nonnegative, got {0}")]
    BadEndTime(f64),
}

/// Errors raised by front tracking and state comparison.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("profile never crosses level {0}")]
    NoCrossing(f64),
    #[error("need at least {needed} samples in the fit window, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("states live on different grids")]
    GridMismatch,
    #[error("profile length {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },
}
