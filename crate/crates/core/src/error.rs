use thiserror::Error;

use crate::tensor::MetricSignature;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected a {expected:?} tensor, got {found:?}")]
    WrongSignature {
        expected: MetricSignature,
        found: MetricSignature,
    },
    #[error("signature mismatch: {0:?} vs {1:?}")]
    SignatureMismatch(MetricSignature, MetricSignature),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("tensor field is not in the six-parameter Killing family: {0}")]
    NotInFamily(String),
    #[error("class {0} has no characteristic tensors; no web to draw")]
    NotCharacteristic(String),
    #[error("invalid render configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
