use alloc::string::String;

/// Crate-wide error type.
///
/// Every fallible public operation returns one of these; none of them panic on
/// malformed input. Callers that have already validated their data (most of
/// the operator builders call each other with known-good dimensions) unwrap
/// internally and document why.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two operands disagree on the number of phase-space variables.
    #[error("mismatched variable counts: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    /// A variable or basis index lies outside the valid range.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    /// Matrix or vector shapes are incompatible for the requested operation.
    #[error("incompatible shapes: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// Phase space needs at least one degree of freedom.
    #[error("the number of degrees of freedom must be at least 1")]
    ZeroDegreesOfFreedom,

    /// A size ceiling guards against accidentally huge Kronecker products.
    #[error("n = {n} exceeds the configured ceiling of {max} degrees of freedom")]
    DegreesOfFreedomCeiling { n: usize, max: usize },

    /// Graded brackets need operands of definite parity.
    #[error("operator does not have definite parity; graded operations need even or odd")]
    MixedParity,

    /// The requested operator depends on a Hamiltonian that was not supplied.
    #[error("this operation requires a Hamiltonian")]
    MissingHamiltonian,

    /// The requested operator depends on a beta parameter that was not supplied.
    #[error("this operation requires a beta parameter")]
    MissingBeta,

    /// The quadratic Casimir must be a nonnegative rational.
    #[error("the Casimir parameter h must be nonnegative, got {value}")]
    NegativeCasimir { value: String },

    /// Matrices over different quadratic extensions cannot be combined.
    #[error("operands live in different scalar extensions: sqrt({left}) vs sqrt({right})")]
    ExtensionMismatch { left: String, right: String },

    /// Text input could not be parsed.
    #[error("parse error at byte {at}: {message}")]
    Parse { at: usize, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;
