//! Errors shared by the kernelization pipelines.

use thiserror::Error;

use crate::expansion::ExpansionError;
use crate::graph::GraphError;
use crate::paths::PathSearchError;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("the reduction-rule kernel requires d ∈ {{4, 5}}, got {0}")]
    SmallKernelNeedsD45(usize),
    #[error("the marking kernel requires 3 <= d <= 8, got {0}")]
    GeneralKernelNeedsD3To8(usize),
    /// A structural observation that only holds for maximum adjacent
    /// matchings failed; the caller handed in a non-maximum matching.
    #[error("observation violated: {0}")]
    ObservationViolated(&'static str),
    /// A component of the remainder graph does not fit the structure
    /// taxonomy for its d; this contradicts packing maximality.
    #[error("component {0} does not fit the d={1} structure taxonomy")]
    UnclassifiableComponent(String, usize),
    #[error(transparent)]
    Path(#[from] PathSearchError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}
