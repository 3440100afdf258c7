use thiserror::Error;

/// Errors raised by the number, packing and classification engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    IncompatibleRadicand(u64, u64),
    #[error("value is rational, a quadratic irrational was required")]
    NotQuadratic,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("value must be positive, got {0}")]
    NonPositiveValue(String),
    #[error("radicand must be positive, got {0}")]
    BadRadicand(String),
    #[error("input must be positive, got {0}")]
    NonPositiveInput(String),
    #[error("index {index} out of range for expansion of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("label ({0}, {1}) has negative square-root curvature")]
    UnnormalizedLabel(String, String),
    #[error("circles are not tangent")]
    NotTangent,
    #[error("operation needs round circles, got a line")]
    LineOperand,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("fill lands on the {actual} side, {requested} was requested")]
    WrongSide {
        requested: &'static str,
        actual: &'static str,
    },
    #[error("replacement run already halted")]
    Halted,
    #[error("replacement run halted after {available} distinct circles, {requested} requested")]
    ExhaustedRun { available: usize, requested: usize },
    #[error("matrix determinant is {0}, need 1 or -1")]
    BadDeterminant(String),
    #[error("matrix has a pole at the input value")]
    PoleInput,
    #[error("bad discriminant {0}: need D > 0, D = 0 or 1 mod 4, D not a square")]
    BadDiscriminant(String),
    #[error("Pell solution violates the parity condition x = yq (mod 2)")]
    ParityViolation,
    #[error("cannot write output: {0}")]
    Io(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{0} is not a reduced quadratic irrational")]
    NotReduced(String),
    #[error("no circle intersects the window")]
    EmptyWindow,
    #[error("invalid render window: {0}")]
    InvalidWindow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
