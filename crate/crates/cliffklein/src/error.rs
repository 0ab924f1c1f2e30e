use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: C{0} vs C{1}")]
    SignatureMismatch(String, String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("reflection vector is null (Q(v) = 0)")]
    NullVector,
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("no construction exists: {0}")]
    Existence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("catalog data error: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
