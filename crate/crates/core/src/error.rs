use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid fixed data: {0}")]
    InvalidData(String),
    #[error("index {0} is frozen or out of range")]
    FrozenIndex(usize),
    #[error("injectivity assumption fails for this seed; use the principal extension")]
    NotInjective,
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("no generic point found after {0} attempts")]
    GenericityExhausted(usize),
    #[error("automorphism is not the identity below degree {0}")]
    NotTrivialBelow(u32),
    #[error("structure constant did not stabilize: {0} vs {1}")]
    NotStable(String, String),
    #[error("document error: {0}")]
    Document(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
