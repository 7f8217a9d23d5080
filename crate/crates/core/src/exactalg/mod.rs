//! Exact integer polynomials, cyclotomic polynomials and integer lattices.

mod cyclotomic;
mod matrix;
mod poly;
mod primes;

pub use cyclotomic::{
    cyclotomic, cyclotomic_factorization, cyclotomic_indices_up_to_degree,
    cyclotomic_prefix_product, divisors, euler_phi, mobius,
};
pub use matrix::{hermite_rows, integer_kernel, smith_normal_form, IntMatrix, SmithForm};
pub use poly::{primitive_lcm, IntPoly};
pub use primes::{is_prime_u64, is_probable_prime, prime_divisors, prime_divisors_of_value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("empty input")]
    EmptyInput,
    #[error("zero input")]
    ZeroInput,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
}
