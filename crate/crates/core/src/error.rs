use thiserror::Error;

/// Failure while reading a polynomial or arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: it has terms of degree {first} and {second}")]
    NotHomogeneous { first: u32, second: u32 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("line {line}: expected a linear form, got degree {degree}")]
    NotLinear { line: usize, degree: u32 },
    #[error("lines {first} and {second} are proportional (the curve is not reduced)")]
    ProportionalLines { first: usize, second: usize },
    #[error("arrangement has no lines")]
    EmptyArrangement,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("subspace containment check failed for vector {index}")]
    SubspaceNotContained { index: usize },
    #[error("input is not reduced: dim M(f)_k = {first} at k = {k} but {second} at k = {}", k + 1)]
    NonReducedInput { k: usize, first: usize, second: usize },
    #[error("curve is smooth; the coincidence threshold is unbounded")]
    SmoothCurve,
    #[error("degree {0} is too small; curves of degree >= 2 are supported")]
    DegreeTooSmall(u32),
    #[error("ideal is not of codimension 2: Hilbert function is {first} at {k}, {second} at {}", k + 1)]
    NotCodimensionTwo { k: usize, first: usize, second: usize },
    #[error("forms are not linearly independent")]
    DependentForms,
    #[error("no vanishing window for the saturation base found below degree {kmax}")]
    BaseWindowNotFound { kmax: usize },
    #[error("syzygy module failed the freeness check in degree {k}: dim {found}, expected {expected}")]
    FreenessCheckFailed { k: usize, found: usize, expected: usize },
    #[error("scan bound {kmax} exhausted: {what} still present near the bound; rerun with a larger --kmax")]
    KmaxExhausted { kmax: usize, what: String },
    #[error("regularity formula max(a-1, b-2) needs a projective dimension 2 table, got {pd}")]
    WrongShape { pd: usize },
    #[error("exponent d1 = {d1} outside 1..={max} for degree {d}")]
    BadExponent { d: u32, d1: u32, max: u32 },
    #[error("inconsistent classification: {0}")]
    InconsistentClassification(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
