use thiserror::Error;

use crate::module::DiamondViolation;
use crate::structure::SquareReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("malformed shape: field `{field}`: {reason}")]
    MalformedShape { field: &'static str, reason: String },

    #[error("carrier is not a subset of the poset: element {0} out of range")]
    CarrierNotSubset(usize),

    #[error("carrier is not an interval: {0}")]
    NotAnInterval(String),

    #[error("invalid generator carrier: {0}")]
    InvalidCarrier(String),

    #[error("modules live over different posets or fields")]
    PosetMismatch,

    #[error("expected a module over a chain, found shape {0}")]
    NotAChain(String),

    #[error("expected a module over a grid, found shape {0}")]
    NotAGrid(String),

    #[error("expected a grid or triangular region, found shape {0}")]
    NotGridLike(String),

    #[error("expected a module over a zigzag fence, found shape {0}")]
    NotAZigzagFence(String),

    #[error("functoriality violated: {0}")]
    Validation(DiamondViolation),

    #[error("family of matrices is not an endomorphism of the module")]
    NotEndomorphism,

    #[error("family of matrices is not a morphism between the given modules")]
    NotMorphism,

    #[error("morphism is not pointwise injective (fails at element {0})")]
    NotMono(usize),

    #[error("module is not middle exact: {0}")]
    NotMiddleExact(SquareReport),

    #[error("counterexample: summand {index} with support {support:?} is not a block module")]
    NonBlockSummand { index: usize, support: Vec<usize> },

    #[error("counterexample: zigzag barcode routes disagree (generic {generic}, extension {extension})")]
    RouteDisagreement { generic: String, extension: String },

    #[error("counterexample: {0}")]
    Counterexample(String),

    #[error("interlevel thresholds must satisfy max(s) < min(t)")]
    OverlapConditionViolated,

    #[error("invalid sampled function: {0}")]
    InvalidSamples(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Findings that contradict a structure theorem, as opposed to bad input.
    pub fn is_counterexample(&self) -> bool {
        matches!(
            self,
            Error::NonBlockSummand { .. } | Error::RouteDisagreement { .. } | Error::Counterexample(_)
        )
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
