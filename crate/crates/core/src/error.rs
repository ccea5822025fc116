use thiserror::Error;

/// Why an expression could not be parsed. `offset` is a 0-based byte offset
/// into the source text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("exponent at offset {offset} must be a constant expression")]
    NonConstantExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonConstantExponent { offset } => Some(*offset),
        }
    }
}

/// A point where the integrand (or one of its derivatives) is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DomainError {
    #[error("log of non-positive value {0}")]
    LogNonPositive(f64),
    #[error("division by (near) zero")]
    DivisionByZero,
    #[error("sqrt of negative value {0}")]
    SqrtNegative(f64),
    #[error("non-integer power {exponent} of negative base {base}")]
    NegativeBase { base: f64, exponent: f64 },
    #[error("derivatives of x^{exponent} are unbounded at x = 0")]
    SingularPower { exponent: f64 },
    #[error("abs is not differentiable at 0")]
    AbsAtZero,
    #[error("non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain violation at x = {x}: {source}")]
    Domain { x: f64, source: DomainError },
    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid weight pair ({endpoint}, {midpoint}): 2*endpoint + midpoint must equal 1")]
    InvalidWeights { endpoint: f64, midpoint: f64 },
    #[error("tolerance {0} outside the supported range")]
    Tolerance(f64),
    #[error("evaluation budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("hypothesis not met: {0}")]
    Hypothesis(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no feasible candidate found within the budget")]
    NoFeasibleCandidate,
}

impl Error {
    pub(crate) fn domain(x: f64) -> impl FnOnce(DomainError) -> Error {
        move |source| Error::Domain { x, source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
