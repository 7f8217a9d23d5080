//! Finite fields `F_{ell^k}`, small matrix groups over them, element orders,
//! Jordan decomposition and conjugation orbits.

mod field;
mod group;
mod matrix;

pub use field::{make_field, FiniteField};
pub use group::{
    conjugacy_reps, enumerate_group, jordan_exponents, GroupKind, GroupSpecFin, ENUMERATION_LIMIT,
};
pub use matrix::FqMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported field size {0}")]
    UnsupportedField(String),
    #[error("group too large to enumerate (estimated order {estimate})")]
    GroupTooLarge { estimate: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
}
