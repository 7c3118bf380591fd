use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("classification: {0}")]
    Classification(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    Degree { degree: usize, cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
