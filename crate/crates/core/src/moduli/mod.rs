//! Tame parameters over finite fields: enumeration of `(F0, sigma0)`, fibers,
//! tangent spaces, order bounds, component labels and cyclic cohomology.

mod aut;
mod cohomology;
mod points;
mod sl2;
mod tangent;
mod torus;

pub use aut::{LElement, SemidirectData, TwistAut};
pub use cohomology::{cyclic_cohomology, h1_finite, CyclicCohomology, H1_FINITE_LIMIT};
pub use points::{
    analyze_points, check_point_bounds, enumerate_z1, fiber_over_sigma, inertial_classes,
    torsor_check, twisted_centralizer, weyl_order_of, BoundsReport, InertialClass, PointList,
    PointRecord, TameParameterPoint, TorsorReport, MAX_PAIRS,
};
pub use sl2::{sl2_parameter, Sl2Parameter};
pub use tangent::{tangent_report, torus_tangent_report, LieBasis, TangentReport};
pub use torus::{twisted_torus_orders, TorusOrders, TORUS_ENUMERATION_LIMIT};

use crate::fingrp::FinError;
use crate::rootdata::RootError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error("{pairs} candidates exceed the cap {cap}")]
    TooManyPairs { pairs: String, cap: u64 },
    #[error("bad action: {0}")]
    BadAction(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error(transparent)]
    Fin(#[from] FinError),
    #[error(transparent)]
    Root(#[from] RootError),
}
