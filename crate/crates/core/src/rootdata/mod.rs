//! Based root data, Weyl groups, diagram automorphisms and twisted
//! characteristic polynomials.

mod cartan;
mod chi;
mod datum;
mod twist;
mod weyl;

pub use cartan::{cartan_matrix, degrees as family_degrees, diagram_symmetry, Family};
pub use chi::{
    chi_oracle, chi_prime, chi_star, chi_table, chi_twisted, fundamental_degrees, twisted_coxeter,
    ChiMethod,
};
pub use datum::{build_root_datum, parse_label, BasedRootDatum, FactorInfo, FactorKind};
pub use twist::{build_twisted, DiagramAutomorphism};
pub use weyl::{weyl_elements, weyl_elements_flat, DEFAULT_WEYL_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root datum type `{0}`")]
    UnsupportedType(String),
    #[error("Weyl group exceeds the enumeration bound ({count} elements reached)")]
    WeylTooLarge { count: usize },
    #[error("no diagram automorphism of order {order} for `{label}`")]
    NoSuchTwist { label: String, order: u32 },
    #[error("matrix is not a diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("no closed-form table for `{0}` with this automorphism")]
    NoTable(String),
    #[error("characteristic polynomial has no cyclotomic factor")]
    DegenerateChi,
    #[error("table and lcm oracle disagree for `{label}`: table {table}, oracle {oracle}")]
    ChiMismatch {
        label: String,
        table: String,
        oracle: String,
    },
}
