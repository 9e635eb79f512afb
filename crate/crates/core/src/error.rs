use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact: nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("constant term {0} is not a unit of Z; series is not invertible")]
    NotInvertible(String),
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("Hilbert-Samuel function {0} has length >= 2; no closed stratum formula")]
    LengthTooLarge(String),
    #[error("Hilbert-Samuel function {0} has length < 2")]
    LengthTooSmall(String),
    #[error("invalid Hilbert-Samuel function: {0}")]
    InvalidHilbertSamuel(String),
    #[error("invalid flag dimensions: {0}")]
    InvalidFlag(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported field size q={0}; only 2, 3 and 5 are supported")]
    UnsupportedField(u32),
    #[error("infeasible size for {what}: {estimate} exceeds limit {limit}")]
    InfeasibleSize {
        what: String,
        estimate: String,
        limit: String,
    },
    #[error("identity `{identity}` violated at {witness}")]
    IdentityViolation { identity: String, witness: String },
    #[error("congruence `{identity}` violated at {witness}")]
    CongruenceViolation { identity: String, witness: String },
    #[error("oracle mismatch for `{identity}` at {witness}")]
    OracleMismatch { identity: String, witness: String },
    #[error("internal mismatch between computation routes for {0}")]
    InternalMismatch(String),
    #[error("restriction range violated: first mismatching degree {degree}")]
    RangeViolation { degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn infeasible(
        what: impl Into<String>,
        estimate: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::InfeasibleSize {
            what: what.into(),
            estimate: estimate.to_string(),
            limit: limit.to_string(),
        }
    }
}
