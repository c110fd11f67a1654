//! Error type shared by every module of the crate.

use serde::Serialize;
use thiserror::Error;

/// Domain errors. Each variant carries enough context to be reported as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", content = "detail")]
pub enum Error {
    #[error("image not representable in target ring: {0}")]
    ImageNotRepresentable(String),
    #[error("weight needs rays: {0}")]
    RaysRequired(String),
    #[error("diagram has a non-closed component starting at {0}")]
    OpenComponent(String),
    #[error("invalid cup-cap pair: {0}")]
    InvalidPair(String),
    #[error("reflected C-shape surgery has no defined coefficient: {0}")]
    CShapeUnsupported(String),
    #[error("block mismatch: {0}")]
    BlockMismatch(String),
    #[error("invalid reverse-surgery site: {0}")]
    InvalidSite(String),
    #[error("hull radius too small: {0}")]
    MTooSmall(String),
    #[error("alpha must be specialized to 0: {0}")]
    AlphaNotZero(String),
    #[error("Morse word is not closed: {0}")]
    NotClosed(String),
    #[error("coefficient ring not supported: {0}")]
    RingNotSupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
