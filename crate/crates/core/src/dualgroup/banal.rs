use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use super::spec::{chi_global, LGroupSpec};
use super::DualError;
use crate::decimal;
use crate::exactalg::{cyclotomic_prefix_product, is_prime_u64, prime_divisors_of_value, IntPoly};
use crate::rootdata::twisted_coxeter;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BanalReport {
    pub chi: IntPoly,
    pub chi_star: IntPoly,
    /// Twisted Coxeter number of `chi`.
    pub h: u64,
    /// Coxeter number of the untwisted group.
    pub h_untwisted: u64,
    #[serde(with = "decimal::big")]
    pub chi_at_q: BigInt,
    /// Primes dividing `e chi*(q)`, other than `p`.
    #[serde(with = "decimal::primes")]
    pub excluded_general: Vec<BigUint>,
    /// Primes dividing `e chi(q) h!`, other than `p`; absent for exceptional or triality factors.
    #[serde(with = "decimal::opt_primes")]
    pub excluded_classical: Option<Vec<BigUint>>,
    /// Primes dividing `e chi'(q)`, other than `p`; present only with a triality factor.
    #[serde(with = "decimal::opt_primes")]
    pub excluded_triality: Option<Vec<BigUint>>,
    /// Primes other than `p` dividing the order of the finite group.
    #[serde(with = "decimal::primes")]
    pub g_nonbanal: Vec<BigUint>,
    /// `e chi(q)^2`, a multiple of the prime-to-p order of the image of inertia.
    #[serde(with = "decimal::big")]
    pub inertia_bound: BigInt,
}

fn excluded(poly: &IntPoly, q: u64, scale: u64, p: u64) -> Result<Vec<BigUint>, DualError> {
    let p = BigUint::from(p);
    Ok(
        prime_divisors_of_value(poly, &BigInt::from(q), &BigInt::from(scale))?
            .into_iter()
            .filter(|l| *l != p)
            .collect(),
    )
}

pub fn banal_report(spec: &LGroupSpec) -> Result<BanalReport, DualError> {
    let ctx = spec.context();
    let (p, q, e) = (ctx.p(), ctx.q(), ctx.e());
    let chi = chi_global(spec)?;
    let h = if chi.is_constant() {
        0
    } else {
        twisted_coxeter(&chi)?
    };
    let chi_star = cyclotomic_prefix_product(h);
    let h1 = spec.untwisted_coxeter();
    let excluded_classical = if spec.has_exceptional_or_triality() {
        None
    } else {
        let mut v = excluded(&chi, q, e, p)?;
        // primes dividing h!
        v.extend(
            (2..=h1)
                .filter(|&l| is_prime_u64(l) && l != p)
                .map(BigUint::from),
        );
        v.sort();
        v.dedup();
        Some(v)
    };
    let excluded_triality = if spec.has_triality() {
        Some(excluded(&spec.chi_prime()?, q, e, p)?)
    } else {
        None
    };
    let chi_at_q = chi.eval(&BigInt::from(q));
    Ok(BanalReport {
        excluded_general: excluded(&chi_star, q, e, p)?,
        g_nonbanal: excluded(&chi, q, 1, p)?,
        inertia_bound: BigInt::from(e) * &chi_at_q * &chi_at_q,
        chi_at_q,
        chi,
        chi_star,
        h,
        h_untwisted: h1,
        excluded_classical,
        excluded_triality,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BanalComparison {
    pub ell: u64,
    pub lg_banal_excluded: bool,
    pub g_nonbanal: bool,
}

impl BanalComparison {
    pub fn agrees(&self) -> bool {
        self.lg_banal_excluded == self.g_nonbanal
    }
}

/// Membership of each prime `h < ell <= bound`, `ell != p`, in the classical
/// excluded set and in the group-side non-banal set.
pub fn compare_banal(spec: &LGroupSpec, bound: u64) -> Result<Vec<BanalComparison>, DualError> {
    if spec.has_exceptional_or_triality() {
        return Err(DualError::NotApplicable(
            "banal comparison requires classical factors only".into(),
        ));
    }
    let r = banal_report(spec)?;
    let classical = r.excluded_classical.expect("classical spec");
    let p = spec.context().p();
    Ok((r.h_untwisted + 1..=bound)
        .filter(|&l| l != p && is_prime_u64(l))
        .map(|l| {
            let b = BigUint::from(l);
            BanalComparison {
                ell: l,
                lg_banal_excluded: classical.contains(&b),
                g_nonbanal: r.g_nonbanal.contains(&b),
            }
        })
        .collect())
}
