use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    /// The group (or a derived object) is too large for exhaustive mode.
    #[error("{what} of size {size} exceeds the cap {cap}")]
    OverCap {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("group order does not fit in 128 bits")]
    OrderOverflow,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("permutation is not an element of the group")]
    NotMember,

    #[error("subgroup is not normal in the parent group")]
    NotNormal,

    #[error("subgroup records belong to different parent groups")]
    ParentMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A constructor's post-condition (usually an order formula) did not hold.
    #[error("construction check failed: {0}")]
    ConstructionCheck(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }

    pub fn is_over_cap(&self) -> bool {
        matches!(self, Error::OverCap { .. })
    }
}
