use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ModuliError;
use crate::exactalg::{IntMatrix, IntPoly};
use crate::fingrp::FiniteField;

/// Cap on `(|F| - 1)^rank` for [`twisted_torus_orders`].
pub const TORUS_ENUMERATION_LIMIT: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusOrders {
    pub solutions: u64,
    pub max_order: u64,
    /// Every solution order divides `chi(q)`.
    pub all_divide: bool,
}

/// Points `t` of the split torus `(F^x)^rank` with `beta(t) = t^q`, where
/// `beta(t)_i = prod_j t_j^{beta[i][j]}`.
///
/// Works in discrete-log coordinates: `t = g^x` solves iff
/// `beta x = q x mod |F| - 1`.
pub fn twisted_torus_orders(
    rank: usize,
    beta: &IntMatrix,
    field: &FiniteField,
    q: u64,
    chi: &IntPoly,
) -> Result<TorusOrders, ModuliError> {
    if rank == 0 || rank > 3 || beta.rows() != rank || beta.cols() != rank {
        return Err(ModuliError::BadInput(format!(
            "torus rank {rank} with a {}x{} action",
            beta.rows(),
            beta.cols()
        )));
    }
    let nm = u64::from(field.size()) - 1;
    let total = nm
        .checked_pow(rank as u32)
        .filter(|&t| t <= TORUS_ENUMERATION_LIMIT);
    let Some(total) = total else {
        return Err(ModuliError::TooManyPairs {
            pairs: format!("{nm}^{rank}"),
            cap: TORUS_ENUMERATION_LIMIT,
        });
    };
    let nb = BigInt::from(nm);
    let b: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| beta.get(i, j).mod_floor(&nb).to_i64().expect("reduced"))
                .collect()
        })
        .collect();
    let n = nm as i64;
    let qm = (q % nm) as i64;
    let chi_q = chi.eval(&BigInt::from(q));
    let mut out = TorusOrders {
        solutions: 0,
        max_order: 0,
        all_divide: true,
    };
    let mut x = vec![0i64; rank];
    for mut c in 0..total {
        for xi in x.iter_mut() {
            *xi = (c % nm) as i64;
            c /= nm;
        }
        let ok = (0..rank).all(|i| {
            let lhs = (0..rank).map(|j| b[i][j] * x[j]).sum::<i64>();
            (lhs - qm * x[i]).rem_euclid(n) == 0
        });
        if !ok {
            continue;
        }
        let g = x.iter().fold(n, |acc, &v| acc.gcd(&v));
        let order = (n / g) as u64;
        out.solutions += 1;
        out.max_order = out.max_order.max(order);
        if chi_q.is_zero() || !(&chi_q % BigInt::from(order)).is_zero() {
            out.all_divide = false;
        }
    }
    Ok(out)
}
