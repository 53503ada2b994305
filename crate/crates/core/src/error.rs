use crate::scalar::Weight;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid coset: {0}")]
    InvalidCoset(String),
    #[error("elements from different spaces combined")]
    MixedSpace,
    #[error("vector has weight {found}, expected stratum {expected}")]
    StratumMismatch { expected: Weight, found: Weight },
    #[error("truncation overflow: weight {needed} exceeds cutoff {cutoff}")]
    TruncationOverflow { needed: Weight, cutoff: Weight },
    #[error("subspace not contained in ambient span (witness row {witness})")]
    NotContained { witness: usize },
    #[error("theta is only defined on the lattice algebra itself")]
    ThetaOnCoset,
    #[error("quotient table did not stabilize up to stratum {0}")]
    NotStabilized(Weight),
    #[error("insufficient cutoff: {0}")]
    InsufficientCutoff(String),
    #[error("state not in span of spanning words at weight {0}")]
    DecompositionNotFound(Weight),
    #[error("membership failure: {0}")]
    Membership(String),
    #[error("rewrite invariant violated: {0}")]
    RewriteInvariant(String),
    #[error("configuration error: {0}")]
    Config(String),
}
