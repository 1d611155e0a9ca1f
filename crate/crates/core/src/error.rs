use std::fmt;

/// The first law a structure fails, with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: String,
    pub witness: String,
}

impl LawViolation {
    pub fn new(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            law: law.into(),
            witness: witness.into(),
        }
    }
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

impl std::error::Error for LawViolation {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a parallel pair: {0}")]
    NotParallel(String),
    #[error("functors disagree on objects: {0}")]
    ObjectsDisagree(String),
    #[error("natural transformations are not parallel: {0}")]
    NotParallel2Cells(String),
    #[error("domain category is not discrete")]
    DomainNotDiscrete,
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("input materialization is not exact")]
    InexactInput,
    #[error("candidate does not coequalise the pair: {0}")]
    NotCoequalising(String),
    #[error("candidate does not coequify the pair: {0}")]
    NotCoequifying(String),
    #[error("invalid cocone: {0}")]
    InvalidCocone(String),
    #[error("graph is cyclic: {0}")]
    CyclicGraph(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("result too large: {0}")]
    TooLarge(String),
    #[error("law violated: {0}")]
    Invalid(#[from] LawViolation),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
