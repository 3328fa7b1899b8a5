use crate::algebra::field::SplitEvent;
use thiserror::Error;

/// Errors surfaced to callers of the analysis pipeline.
///
/// `InvalidInput` covers rejected parameterizations (base points, failed
/// birationality, degenerate triples).  `Internal` flags a violated invariant
/// of the theory: it should never fire on valid input and is reported
/// separately so that automation can distinguish the two.  `Split` carries a
/// dynamic-evaluation split out of a computation whose caller owns the
/// branch exploration.
#[derive(Debug, Error)]
pub enum CurveError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("computation split: {0}")]
    Split(SplitEvent),
}

impl CurveError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CurveError::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CurveError::Internal(msg.into())
    }
}

impl From<SplitEvent> for CurveError {
    fn from(ev: SplitEvent) -> Self {
        CurveError::Split(ev)
    }
}
