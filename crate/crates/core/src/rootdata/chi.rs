use std::collections::{BTreeSet, HashSet};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cartan::{self, Family};
use super::datum::{BasedRootDatum, FactorInfo, FactorKind};
use super::twist::{build_twisted, DiagramAutomorphism};
use super::weyl::{weyl_elements_flat, DEFAULT_WEYL_BOUND};
use super::RootError;
use crate::exactalg::{
    cyclotomic_factorization, cyclotomic_prefix_product, primitive_lcm, IntPoly,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiMethod {
    #[default]
    Auto,
    Oracle,
    Table,
}

/// Fundamental degrees of all factors, one `1` per central torus rank.
pub fn fundamental_degrees(d: &BasedRootDatum) -> Vec<u64> {
    let mut out: Vec<u64> = d.factors().iter().flat_map(FactorInfo::degrees).collect();
    out.sort_unstable();
    out
}

fn signed_product(terms: impl IntoIterator<Item = (u64, i64)>) -> IntPoly {
    terms
        .into_iter()
        .map(|(d, c)| IntPoly::binomial(d as usize, c))
        .product()
}

fn factor_table(f: &FactorInfo, order: u32) -> Option<IntPoly> {
    if order == 1 {
        return Some(signed_product(f.degrees().into_iter().map(|d| (d, 1))));
    }
    let central = (0..f.central_rank).map(|_| (1u64, -1i64));
    let ss: Vec<(u64, i64)> = match (f.family, order) {
        (None, 2) => vec![],
        (Some(Family::A), 2) => {
            // GL_n twisted: the centre contributes T + 1 as the d = 1 term
            let n = f.ss_rank as u64;
            (2..=n + 1)
                .map(|d| (d, if d % 2 == 0 { 1 } else { -1 }))
                .collect()
        }
        (Some(Family::D), 2) => {
            let n = f.ss_rank as u64;
            let mut v: Vec<(u64, i64)> = (1..n).map(|d| (2 * d, 1)).collect();
            v.push((n, -1));
            v
        }
        (Some(Family::E), 2) if f.ss_rank == 6 => cartan::degrees(Family::E, 6)
            .into_iter()
            .map(|d| (d, if d == 5 || d == 9 { -1 } else { 1 }))
            .collect(),
        (Some(Family::D), 3) if f.ss_rank == 4 => {
            let tail = IntPoly::from_i64(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
            return Some(signed_product([(2, 1), (6, 1)]) * tail);
        }
        _ => return None,
    };
    if matches!(
        f.kind,
        FactorKind::Torus | FactorKind::EvenOrthogonal | FactorKind::GeneralLinear
    ) || f.central_rank == 0
    {
        Some(signed_product(central.chain(ss)))
    } else {
        None
    }
}

/// Closed-form `chi` for trivial twists and the recognized twisted cases.
pub fn chi_table(d: &BasedRootDatum, beta: &DiagramAutomorphism) -> Option<IntPoly> {
    let orders = beta.factor_orders()?;
    d.factors()
        .iter()
        .zip(orders)
        .map(|(f, &o)| factor_table(f, o))
        .product()
}

fn char_poly_i128(a: &[i64], n: usize) -> Vec<i128> {
    let a: Vec<i128> = a.iter().map(|&x| i128::from(x)).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![0i128; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    for k in 1..=n {
        let mut am = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = a[i * n + l];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    am[i * n + j] += x * m[l * n + j];
                }
            }
        }
        let tr: i128 = (0..n).map(|i| am[i * n + i]).sum();
        let c = -tr / k as i128;
        coeffs[n - k] = c;
        for i in 0..n {
            am[i * n + i] += c;
        }
        m = am;
    }
    coeffs
}

/// Springer's lcm of `det(T - w beta^-1)` over the Weyl group.
pub fn chi_oracle(
    d: &BasedRootDatum,
    beta: &DiagramAutomorphism,
    bound: usize,
) -> Result<IntPoly, RootError> {
    let n = d.rank();
    let binv: Vec<i64> = beta
        .inverse()
        .lattice_matrix()
        .entries()
        .iter()
        .map(|x| i64::try_from(x).expect("automorphism entries fit in i64"))
        .collect();
    let elems = weyl_elements_flat(d, bound)?;
    let polys: BTreeSet<Vec<i128>> = elems
        .par_iter()
        .map(|w| {
            let mut prod = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = w[i * n + k];
                    if x != 0 {
                        for j in 0..n {
                            prod[i * n + j] += x * binv[k * n + j];
                        }
                    }
                }
            }
            char_poly_i128(&prod, n)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let polys: Vec<IntPoly> = polys
        .into_iter()
        .map(|c| IntPoly::new(c.into_iter().map(BigInt::from).collect()))
        .collect();
    if polys.is_empty() {
        return Ok(IntPoly::one());
    }
    Ok(primitive_lcm(&polys).expect("char polys are nonzero"))
}

fn verified() -> &'static Mutex<HashSet<(String, u32)>> {
    static CACHE: OnceLock<Mutex<HashSet<(String, u32)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashSet::new()))
}

/// Checks each factor's table value against the oracle once per process.
fn cross_check(d: &BasedRootDatum, orders: &[u32]) -> Result<(), RootError> {
    for (f, &o) in d.factors().iter().zip(orders) {
        let key = (f.label.clone(), o);
        if verified().lock().unwrap().contains(&key) {
            continue;
        }
        let w: u128 = f
            .family
            .map(|fam| {
                cartan::degrees(fam, f.ss_rank)
                    .iter()
                    .map(|&x| u128::from(x))
                    .product()
            })
            .unwrap_or(1);
        if w > DEFAULT_WEYL_BOUND as u128 {
            continue;
        }
        let token = if o == 1 {
            f.label.clone()
        } else {
            format!("{}^{}", f.label, o)
        };
        let (fd, fb) = build_twisted(&token)?;
        let table = factor_table(f, o).ok_or_else(|| RootError::NoTable(token.clone()))?;
        let oracle = chi_oracle(&fd, &fb, DEFAULT_WEYL_BOUND)?;
        if table != oracle {
            return Err(RootError::ChiMismatch {
                label: token,
                table: table.to_string(),
                oracle: oracle.to_string(),
            });
        }
        verified().lock().unwrap().insert(key);
    }
    Ok(())
}

pub fn chi_twisted(
    d: &BasedRootDatum,
    beta: &DiagramAutomorphism,
    method: ChiMethod,
) -> Result<IntPoly, RootError> {
    match method {
        ChiMethod::Table => chi_table(d, beta).ok_or_else(|| RootError::NoTable(d.label().into())),
        ChiMethod::Oracle => chi_oracle(d, beta, DEFAULT_WEYL_BOUND),
        ChiMethod::Auto => match chi_table(d, beta) {
            Some(t) => {
                cross_check(
                    d,
                    beta.factor_orders().expect("table implies factor orders"),
                )?;
                Ok(t)
            }
            None => chi_oracle(d, beta, DEFAULT_WEYL_BOUND),
        },
    }
}

/// Largest `n` with `Phi_n | chi`.
pub fn twisted_coxeter(chi: &IntPoly) -> Result<u64, RootError> {
    if chi.is_constant() || chi.is_zero() {
        return Err(RootError::DegenerateChi);
    }
    let (mult, _) = cyclotomic_factorization(chi);
    mult.keys().max().copied().ok_or(RootError::DegenerateChi)
}

/// `prod_{n <= h} Phi_n` with `h` the twisted Coxeter number.
pub fn chi_star(d: &BasedRootDatum, beta: &DiagramAutomorphism) -> Result<IntPoly, RootError> {
    let h = twisted_coxeter(&chi_twisted(d, beta, ChiMethod::Auto)?)?;
    Ok(cyclotomic_prefix_product(h))
}

fn is_triality(f: &FactorInfo, order: u32) -> bool {
    f.family == Some(Family::D) && f.ss_rank == 4 && order == 3
}

/// Like `chi`, with each triality factor replaced by `T^12 - 1`.
pub fn chi_prime(d: &BasedRootDatum, beta: &DiagramAutomorphism) -> Result<IntPoly, RootError> {
    let chi = chi_twisted(d, beta, ChiMethod::Auto)?;
    let Some(orders) = beta.factor_orders() else {
        return Ok(chi);
    };
    if !d
        .factors()
        .iter()
        .zip(orders)
        .any(|(f, &o)| is_triality(f, o))
    {
        return Ok(chi);
    }
    Ok(d.factors()
        .iter()
        .zip(orders)
        .map(|(f, &o)| {
            if is_triality(f, o) {
                IntPoly::binomial(12, 1)
            } else {
                factor_table(f, o).expect("table exists when chi_twisted succeeded")
            }
        })
        .product())
}
