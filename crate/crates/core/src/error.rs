use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("pattern support leaves the configuration domain")]
    SupportOutOfDomain,
    #[error("homomorphism violates a defining relation: {0}")]
    RelationViolation(String),
    #[error("homomorphism is not a quotient map")]
    NotAQuotient,
    #[error("homomorphism is not an embedding")]
    NotAnEmbedding,
    #[error("embedding is not injective on the pattern supports: {0}")]
    NonInjectiveOnSupport(String),
    #[error("no preimage found for target generator {0}")]
    NotSurjective(String),
    #[error("base SFT must live on free abelian rank 2, found {0}")]
    WrongBaseGroup(String),
    #[error("projection map does not cover symbol {0}")]
    ProjectionIncomplete(String),
    #[error("reduction chain step {step} does not compose: {reason}")]
    ChainTypeMismatch { step: usize, reason: String },
    #[error("radius {radius} is below the required support radius {required}")]
    RadiusTooSmall { radius: u32, required: u32 },
    #[error("lattice is singular or has the wrong dimension: {0}")]
    SingularLattice(String),
    #[error("torus domains require a free abelian group")]
    TorusRequiresFreeAbelian,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("automorphism does not preserve the torus lattice")]
    LatticeNotPreserved,
    #[error("transformed window is empty")]
    DomainTooSmall,
    #[error("shear vectors are not orthogonal (u.v = {0})")]
    NotOrthogonal(i64),
    #[error("shear direction v is zero")]
    ZeroDirection,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("configuration is not admissible for the SFT")]
    Inadmissible,
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
