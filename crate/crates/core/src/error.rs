use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is reducible")]
    ReduciblePolynomial,
    #[error("no primitive element found")]
    NoPrimitiveFound,
    #[error("division by zero")]
    DivisionByZero,
    #[error("closure exceeded the budget of {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid q: {0}")]
    InvalidQ(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generators produce a group of order {actual}, expected {expected}")]
    WrongOrder { actual: usize, expected: usize },
    #[error("prime {0} does not divide the group order")]
    PNotDividing(u64),
    #[error("subgroup of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("oracle disagreement on {0}")]
    OracleDisagreement(String),
    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),
    #[error("prn meet is not unique: {0}")]
    UniquenessViolation(String),
    #[error("no meet counterexample found: {0}")]
    NoneFound(String),
    #[error("unknown regime: {0}")]
    UnknownRegime(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("{target}: {source}")]
    Target {
        target: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code for the verifier: 2 for bad input, 3 for internal
    /// failures of the checking machinery, 1 when a
    /// predicted construction could not be realized.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Target { source, .. } => source.exit_code(),
            Error::OracleDisagreement(_)
            | Error::UniquenessViolation(_)
            | Error::NoPrimitiveFound
            | Error::Internal(_) => 3,
            Error::NoneFound(_) => 1,
            _ => 2,
        }
    }

    /// Attaches the name of the target being processed.
    pub fn in_target(self, target: &str) -> Error {
        match self {
            e @ Error::Target { .. } => e,
            e => Error::Target { target: target.to_string(), source: Box::new(e) },
        }
    }
}
