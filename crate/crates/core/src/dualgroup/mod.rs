//! L-group descriptors, global characteristic polynomials, point counts and
//! banal prime sets.

mod banal;
mod spec;
mod torus;

pub use banal::{banal_report, compare_banal, BanalComparison, BanalReport};
pub use spec::{chevalley_steinberg, chi_global, ArithContext, LFactor, LGroupSpec};
pub use torus::{
    git_component_descriptor, git_descriptor_for, torus_cocycle_group, torus_cocycle_map,
    GitDescriptor, TorusCocycleGroup,
};

use crate::exactalg::ExactError;
use crate::rootdata::RootError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("invalid arithmetic context: {0}")]
    InvalidContext(String),
    #[error("invalid L-group spec: {0}")]
    InvalidSpec(String),
    #[error("matrix does not have finite order within the search limit")]
    InfiniteOrder,
    #[error("point count is not positive")]
    NonPositiveCount,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("bad action: {0}")]
    BadAction(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
