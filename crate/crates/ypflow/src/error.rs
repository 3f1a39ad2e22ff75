use thiserror::Error;

/// Errors produced by the analysis routines.
///
/// Domain preconditions (degree parity, sign of the leading coefficient,
/// window widths) are reported here rather than panicking, so the CLI can
/// map them onto exit codes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("expected an even-degree polynomial, got degree {0}")]
    OddDegree(usize),
    #[error("leading coefficient must be positive, got {0}")]
    NegativeLeading(f64),
    #[error("expected a polynomial of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("averaging window must be positive, got {0}")]
    NonpositiveWidth(f64),
    #[error("leading coefficient in x is identically zero as a polynomial in t")]
    DegenerateLeading,
    #[error("trajectory starts on a vanishing second derivative at (x={x}, t={t})")]
    StartOnSingularity { x: f64, t: f64 },
    #[error("descent did not converge within {0} iterations; reduce the step size")]
    NonConvergence(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("denominator of the double-root formula vanishes at t={0}")]
    DegenerateDenominator(f64),
    #[error("t={t} is not a merge time: discriminant residual {residual:e} exceeds tolerance")]
    NotAMergeTime { t: f64, residual: f64 },
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("expression mixes variables '{first}' and '{second}'")]
    MultipleVariables { first: char, second: char },
    #[error("internal consistency violation: {0}")]
    ConsistencyViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
