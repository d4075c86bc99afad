use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the empty set has no component index")]
    IndexOfEmptySet,
    #[error("party {party} out of range for N = {n}")]
    PartyOutOfRange { party: usize, n: usize },
    #[error("unsupported party count N = {0}")]
    UnsupportedPartyCount(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative coefficient in conic combination")]
    NegativeCoefficient,
    #[error("cone is not pointed (lineality space has dimension {0})")]
    NonPointedCone(usize),
    #[error("zero vector has no extremality verdict")]
    ZeroVector,
    #[error("empty constraint list")]
    EmptyConstraints,
    #[error("invalid hypergraph model: {}", .0.join("; "))]
    ModelInvalid(Vec<String>),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid state spec: {0}")]
    InvalidStateSpec(String),
    #[error("map length mismatch: expected {expected} images, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("map is not surjective: party {0} has no preimage")]
    NotSurjective(usize),
    #[error("invalid arity: cannot map {from} parties onto {to}")]
    InvalidArity { from: usize, to: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
