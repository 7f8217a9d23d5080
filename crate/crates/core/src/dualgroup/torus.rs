use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DualError;
use crate::decimal;
use crate::exactalg::{integer_kernel, smith_normal_form, IntMatrix};
use crate::rootdata::{weyl_elements, BasedRootDatum, DiagramAutomorphism};

const ORDER_LIMIT: u64 = 10_000;

/// Structure of a diagonalizable group: `G_m^free x prod mu_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCocycleGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    #[serde(with = "decimal::big_vec")]
    pub torsion: Vec<BigInt>,
}

impl TorusCocycleGroup {
    /// Number of points over `F_ell`: `(ell - 1)^free * prod gcd(d, ell - 1)`.
    pub fn point_count(&self, ell: u64) -> BigInt {
        let m = BigInt::from(ell - 1);
        let mut n = num_traits::pow(m.clone(), self.free_rank);
        for d in &self.torsion {
            n *= d.gcd(&m);
        }
        n
    }
}

fn check_square(m: &IntMatrix, r: usize, what: &str) -> Result<(), DualError> {
    if m.rows() != r || m.cols() != r {
        return Err(DualError::BadAction(format!("{what} must be {r}x{r}")));
    }
    Ok(())
}

/// The map `X -> X^2` dual to `(F, s) -> F Fr(s) s^q(F)^{-1} N_q(s)^{-1}`,
/// as a `2r x r` integer matrix.
///
/// `a_fr` and `a_s` act on characters and must satisfy
/// `a_fr a_s a_fr^{-1} = a_s^q`.
pub fn torus_cocycle_map(
    a_fr: &IntMatrix,
    a_s: &IntMatrix,
    q: u64,
) -> Result<IntMatrix, DualError> {
    let r = a_fr.rows();
    check_square(a_fr, r, "a_fr")?;
    check_square(a_s, r, "a_s")?;
    if q < 2 {
        return Err(DualError::BadAction("q must be at least 2".into()));
    }
    let ord_fr = a_fr
        .finite_order(ORDER_LIMIT)
        .ok_or(DualError::InfiniteOrder)?;
    let ord_s = a_s
        .finite_order(ORDER_LIMIT)
        .ok_or(DualError::InfiniteOrder)?;
    if (a_fr * a_s) != (&a_s.pow(q) * a_fr) {
        return Err(DualError::BadAction("a_fr a_s a_fr^-1 != a_s^q".into()));
    }
    // automorphisms of the torus act on characters through the inverse matrices
    let b_fr = a_fr.pow(ord_fr - 1);
    let b_s = a_s.pow(ord_s - 1);
    let id = IntMatrix::identity(r);
    let top = id.sub(&b_s.pow(q));
    let mut norm = IntMatrix::zeros(r, r);
    let mut acc = id.clone();
    for _ in 0..q {
        norm = norm.add(&acc);
        acc = &acc * &b_s;
    }
    Ok(top.vstack(&b_fr.sub(&norm)))
}

/// Character-lattice structure of the torus cocycle scheme, via the Smith
/// form of [`torus_cocycle_map`].
pub fn torus_cocycle_group(
    a_fr: &IntMatrix,
    a_s: &IntMatrix,
    q: u64,
) -> Result<TorusCocycleGroup, DualError> {
    let m = torus_cocycle_map(a_fr, a_s, q)?;
    let snf = smith_normal_form(&m);
    let inv = snf.invariant_factors();
    let nonzero: Vec<BigInt> = inv.into_iter().filter(|d| !d.is_zero()).collect();
    Ok(TorusCocycleGroup {
        free_rank: m.rows() - nonzero.len(),
        torsion: nonzero.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitDescriptor {
    /// Rank of `ker(beta - 1)` on characters.
    pub invariant_rank: usize,
    /// Order of the centralizer of `beta` in the Weyl group.
    pub fixed_weyl_order: usize,
}

/// Rank of the `beta`-invariant characters and the number of Weyl elements
/// commuting with `beta`.
pub fn git_component_descriptor(
    beta: &IntMatrix,
    weyl: &[IntMatrix],
) -> Result<GitDescriptor, DualError> {
    if !beta.is_square() {
        return Err(DualError::BadAction("beta must be square".into()));
    }
    beta.finite_order(ORDER_LIMIT)
        .ok_or(DualError::InfiniteOrder)?;
    let n = beta.rows();
    let kernel = integer_kernel(&beta.sub(&IntMatrix::identity(n)));
    let fixed = weyl.iter().filter(|w| (beta * *w) == (*w * beta)).count();
    Ok(GitDescriptor {
        invariant_rank: kernel.rows(),
        fixed_weyl_order: fixed,
    })
}

/// [`git_component_descriptor`] for a root datum with its full Weyl group.
pub fn git_descriptor_for(
    d: &BasedRootDatum,
    beta: &DiagramAutomorphism,
    bound: usize,
) -> Result<GitDescriptor, DualError> {
    let weyl = weyl_elements(d, bound)?;
    git_component_descriptor(beta.lattice_matrix(), &weyl)
}
