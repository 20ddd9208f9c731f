use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values from different parameter spaces were combined.
    ParamSpaceMismatch { left: String, right: String },
    /// Two noncommutative polynomials from different algebra contexts were combined.
    ContextMismatch { left: String, right: String },
    /// A parameter occurring with a negative exponent was bound to a non-invertible value.
    NonInvertibleBinding { param: String },
    /// A specialization was missing a binding for a parameter.
    MissingBinding { param: String },
    /// A Laurent polynomial that had to be a single invertible monomial was not.
    NotAMonomial(String),
    /// A homomorphism had no image for a generator occurring in its input.
    UnmappedGenerator(String),
    /// A normal-form computation exceeded the live-monomial budget.
    ResourceLimit { cap: usize },
    /// Row reduction was asked for with a pivot the context cannot invert.
    Pivot(String),
    /// A row/column index was outside the matrix.
    IndexOutOfRange { index: usize, bound: usize },
    /// An unknown identity name was passed to a verification entry point.
    UnknownIdentity(String),
    /// The input matrix is not invertible over its division ring.
    Singular,
    /// A graded operation was applied to an inhomogeneous element.
    Inhomogeneous(String),
    /// Textual input could not be parsed.
    Parse { msg: String, at: usize },
    /// Mismatched dimensions (e.g. minor index sets of different sizes).
    DimensionMismatch(String),
    /// An internal invariant failed; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParamSpaceMismatch { left, right } => {
                write!(f, "parameter spaces differ: [{left}] vs [{right}]")
            }
            Error::ContextMismatch { left, right } => {
                write!(f, "algebra contexts differ: {left} vs {right}")
            }
            Error::NonInvertibleBinding { param } => {
                write!(
                    f,
                    "parameter {param} occurs with a negative exponent but its binding is not an invertible monomial"
                )
            }
            Error::MissingBinding { param } => write!(f, "no binding for parameter {param}"),
            Error::NotAMonomial(what) => write!(f, "{what} is not an invertible monomial"),
            Error::UnmappedGenerator(g) => write!(f, "no image for generator {g}"),
            Error::ResourceLimit { cap } => {
                write!(f, "normal form exceeded the budget of {cap} live monomials")
            }
            Error::Pivot(msg) => write!(f, "pivot not invertible: {msg}"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (must be in 1..={bound})")
            }
            Error::UnknownIdentity(id) => write!(f, "unknown identity id: {id}"),
            Error::Singular => write!(f, "matrix is not invertible"),
            Error::Inhomogeneous(what) => write!(f, "{what} is not bihomogeneous"),
            Error::Parse { msg, at } => write!(f, "parse error at byte {at}: {msg}"),
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
