use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("subgroup is not contained in the ambient group")]
    NotContained,

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("subgroup is not minimal normal in the ambient group")]
    NotMinimalNormal,

    #[error("operation needs a nontrivial group")]
    TrivialGroup,

    #[error("resource bound exceeded: {what} is {value}, limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("unsupported atom {0}")]
    UnsupportedAtom(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("group is not in E_pi for pi = {pi}")]
    NotEPi { pi: String },

    #[error("group is not in C_pi for pi = {pi}")]
    NotCPi { pi: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A step whose success is a theorem of finite group theory failed.
    /// Always an implementation bug.
    #[error("internal invariant failed: {0}")]
    InvariantViolation(String),

    /// No Hall class of the normal subgroup is stable under the whole group.
    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_) | Error::NoWitness(_))
    }
}
