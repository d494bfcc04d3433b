use thiserror::Error;

use crate::sets::TaggedPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("the group is divisible; no collapse witness exists")]
    DivisibleGroup,
    #[error("the group is discrete; this construction needs a dense group")]
    DiscreteGroup,
    #[error("class computation needs the divisible group Q")]
    NonDivisibleGroup,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no group element found in the requested interval")]
    EmptyRegion,
    #[error("interval bounds must satisfy lo < hi")]
    BadBounds,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("cell is not a product of single-variable bounds; unsupported over Z")]
    UnsupportedDiscreteCell,
    #[error("sampling exhausted its retry budget")]
    SamplingExhausted,
    #[error("point is not in the domain of any piece")]
    NotInDomain,
    #[error("point lies in the domains of several pieces")]
    AmbiguousPiece,
    #[error("affine map is not injective on the affine hull of its cell")]
    NotInjectiveOnHull,
    #[error("codomain of the first map does not match the domain of the second")]
    ChainMismatch,
    #[error("map has no passing bijection certificate")]
    NotVerified,
    #[error("affine map is not definable over the group")]
    NotDefinable,
    #[error("parts do not partition the set over the group")]
    NotAPartition { witness: Option<TaggedPoint> },
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("{0} is an element of the group")]
    InGroup(String),
    #[error("unknown component label `{0}`")]
    UnknownLabel(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
