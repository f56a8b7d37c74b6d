use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("Groebner basis computation exceeded the budget of {budget} S-pairs")]
    BudgetExceeded { budget: u64 },

    #[error("colon by the zero ideal is rejected")]
    ColonByZero,

    #[error("input must be homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("not a squarefree monomial ideal: {0}")]
    NotSquarefree(String),

    #[error("the module is zero")]
    ZeroModule,

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("containment fails: {0}")]
    NotContained(String),

    #[error("no regular sequence of length {length} found after {attempts} attempts")]
    RegularSequenceNotFound { length: usize, attempts: usize },

    #[error("linkage hypothesis violated: {0}")]
    LinkHypothesis(String),

    #[error("degenerate link: {0}")]
    DegenerateLink(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// A stable short label, used when tallying failures.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::RingMismatch => "ring_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::ColonByZero => "colon_by_zero",
            Error::NotHomogeneous(_) => "not_homogeneous",
            Error::NotSquarefree(_) => "not_squarefree",
            Error::ZeroModule => "zero_module",
            Error::UnitIdeal => "unit_ideal",
            Error::NotContained(_) => "not_contained",
            Error::RegularSequenceNotFound { .. } => "regular_sequence_not_found",
            Error::LinkHypothesis(_) => "link_hypothesis",
            Error::DegenerateLink(_) => "degenerate_link",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}
